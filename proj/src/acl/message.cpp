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

#include "agora/acl/message.hpp"

#include <algorithm>

namespace agora::acl {

namespace {

struct PerformativeName
{
  Performative     value;
  std::string_view name;
};

constexpr PerformativeName kNames[] = {
    {Performative::AcceptProposal, "ACCEPT_PROPOSAL"},
    {Performative::Agree, "AGREE"},
    {Performative::Inform, "INFORM"},
    {Performative::Failure, "FAILURE"},
    {Performative::Propose, "PROPOSE"},
    {Performative::Refuse, "REFUSE"},
    {Performative::Request, "REQUEST"},
};

}  // namespace

std::string_view to_string(Performative p)
{
  auto const it = std::find_if(std::begin(kNames), std::end(kNames),
                               [p](auto const &n) { return n.value == p; });
  return it->name;
}

std::optional<Performative> parse_performative(std::string_view text)
{
  auto const it = std::find_if(std::begin(kNames), std::end(kNames),
                               [text](auto const &n) { return n.name == text; });
  if (it == std::end(kNames))
  {
    return std::nullopt;
  }
  return it->value;
}

AclMessage make_reply(AclMessage const &original, AgentId const &from, Performative performative,
                      std::string content)
{
  AclMessage reply;
  reply.performative    = performative;
  reply.sender          = from;
  reply.receivers       = {original.sender};
  reply.content         = std::move(content);
  reply.conversation_id = original.conversation_id;
  reply.protocol        = original.protocol;
  reply.in_reply_to     = original.reply_with;
  return reply;
}

}  // namespace agora::acl
