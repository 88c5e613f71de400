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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "agora/core/error.hpp"

namespace agora::ingest::xml {

/// The input is not well-formed XML (or uses a construct we refuse, such as a DOCTYPE).
class MalformedDocument : public Error
{
public:
  MalformedDocument(int line, std::string const &message)
    : Error("malformed document at line " + std::to_string(line) + ": " + message)
    , line_(line)
  {}

  int line() const noexcept
  {
    return line_;
  }

private:
  int line_;
};

struct Element
{
  std::string                                      name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Element>                             children;
  /// Character data directly inside this element, concatenated.
  std::string text;
  int         line = 0;

  std::optional<std::string_view> attribute(std::string_view key) const;
  std::vector<Element const *>    children_named(std::string_view key) const;
};

inline constexpr int kMaxDepth = 64;

/// Parses a complete document into its root element.
Element parse(std::string_view document);

/// Escapes text for element content or attribute values.
std::string escape(std::string_view text);

/// True when every code point is allowed in XML 1.0 character data.
bool is_representable(std::string_view text);

}  // namespace agora::ingest::xml
