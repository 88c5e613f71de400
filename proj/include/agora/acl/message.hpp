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
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace agora::acl {

/// Agent identifier issued by the AMS.
struct AgentId
{
  std::string name;
  std::string address;

  friend bool operator==(AgentId const &, AgentId const &) = default;
  friend auto operator<=>(AgentId const &, AgentId const &) = default;
};

inline std::ostream &operator<<(std::ostream &os, AgentId const &aid)
{
  return os << aid.name << '@' << aid.address;
}

/// The complete set of speech acts the platform understands.
enum class Performative
{
  AcceptProposal,
  Agree,
  Inform,
  Failure,
  Propose,
  Refuse,
  Request,
};

inline constexpr Performative kAllPerformatives[] = {
    Performative::AcceptProposal, Performative::Agree,  Performative::Inform,
    Performative::Failure,        Performative::Propose, Performative::Refuse,
    Performative::Request,
};

std::string_view       to_string(Performative p);
std::optional<Performative> parse_performative(std::string_view text);

inline std::ostream &operator<<(std::ostream &os, Performative p)
{
  return os << to_string(p);
}

struct AclMessage
{
  Performative               performative = Performative::Inform;
  AgentId                    sender;
  std::vector<AgentId>       receivers;
  std::string                content;
  std::string                conversation_id;
  std::string                protocol;
  std::optional<std::string> reply_with;
  std::optional<std::string> in_reply_to;
};

/// Builds the reply to `original`: same conversation and protocol, addressed back to the
/// original sender, with in_reply_to carrying the original reply_with.
AclMessage make_reply(AclMessage const &original, AgentId const &from, Performative performative,
                      std::string content);

}  // namespace agora::acl
