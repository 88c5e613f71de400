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

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace agora {

/// Whole-second UTC instant. All engine time is injected; nothing reads the wall clock
/// except the gateway's clock adapter.
using Timestamp = std::chrono::sys_seconds;
using Seconds   = std::chrono::seconds;

inline Timestamp from_unix_seconds(std::int64_t s)
{
  return Timestamp{Seconds{s}};
}

inline std::int64_t to_unix_seconds(Timestamp t)
{
  return t.time_since_epoch().count();
}

/// Renders "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601(Timestamp t);

/// Accepts exactly the form produced by format_iso8601.
std::optional<Timestamp> parse_iso8601(std::string_view text);

/// Current wall-clock time truncated to seconds.
Timestamp wall_clock_now();

}  // namespace agora
