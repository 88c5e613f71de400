#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The Agora Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <iosfwd>

namespace agora::gateway {

inline constexpr int kExitOk        = 0;
inline constexpr int kExitUsage     = 1;
inline constexpr int kExitDataError = 2;

/// Subcommands: serve, import FILE, report, simulate. Returns the process exit code.
int cli_main(int argc, char const *const *argv, std::ostream &out, std::ostream &err);

}  // namespace agora::gateway
