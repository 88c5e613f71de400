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

#include "agora/acl/request_protocol.hpp"

namespace agora::acl {

std::vector<Performative> ProtocolOutcome::performatives() const
{
  std::vector<Performative> out;
  out.reserve(transcript.size());
  for (auto const &m : transcript)
  {
    out.push_back(m.performative);
  }
  return out;
}

ProtocolOutcome run_request_protocol(Platform &platform, AgentId const &initiator,
                                     AgentId const &participant, std::string content,
                                     std::chrono::milliseconds timeout)
{
  if (!platform.is_registered(initiator))
  {
    throw UnknownSender(initiator.name);
  }
  if (!platform.is_registered(participant))
  {
    throw UnknownAgent(participant.name);
  }

  AclMessage request;
  request.performative    = Performative::Request;
  request.sender          = initiator;
  request.receivers       = {participant};
  request.content         = std::move(content);
  request.conversation_id = platform.next_conversation_id();
  request.protocol        = std::string(kRequestProtocol);
  request.reply_with      = request.conversation_id + "/request";

  auto const mailbox  = platform.mailbox(initiator);
  auto const deadline = Mailbox::Clock::now() + timeout;
  auto const select   = [conversation = request.conversation_id](AclMessage const &m) {
    return m.conversation_id == conversation;
  };

  ProtocolOutcome outcome;
  outcome.transcript.push_back(request);
  platform.acc_send(request);

  auto const expect_reply = [&](char const *stage) {
    auto reply = mailbox->pop_matching(select, deadline);
    if (!reply)
    {
      throw ProtocolTimeout("no reply " + std::string(stage) + " in conversation " +
                            request.conversation_id);
    }
    if (reply->sender == platform.acc_id() && reply->performative == Performative::Failure)
    {
      throw UnknownAgent(participant.name);
    }
    if (reply->in_reply_to != request.reply_with)
    {
      throw ProtocolViolation("reply does not reference the request in conversation " +
                              request.conversation_id);
    }
    outcome.transcript.push_back(*reply);
    return reply->performative;
  };

  auto const first = expect_reply("to REQUEST");
  if (first == Performative::Refuse)
  {
    return outcome;
  }
  if (first != Performative::Agree)
  {
    throw ProtocolViolation("expected AGREE or REFUSE, got " + std::string(to_string(first)));
  }

  auto const second = expect_reply("after AGREE");
  if (second != Performative::Inform && second != Performative::Failure)
  {
    throw ProtocolViolation("expected INFORM or FAILURE, got " + std::string(to_string(second)));
  }
  return outcome;
}

Behaviour make_request_responder(Platform &platform, AgentId self, RequestHandler handler)
{
  return [&platform, self = std::move(self), handler = std::move(handler)](AclMessage const &msg) {
    if (msg.performative != Performative::Request)
    {
      if (msg.performative != Performative::Failure)
      {
        platform.acc_send(make_reply(msg, self, Performative::Failure,
                                     "unexpected " + std::string(to_string(msg.performative))));
      }
      return;
    }

    if (handler.screen)
    {
      if (auto reason = handler.screen(msg))
      {
        platform.acc_send(make_reply(msg, self, Performative::Refuse, std::move(*reason)));
        return;
      }
    }
    platform.acc_send(make_reply(msg, self, Performative::Agree, ""));

    std::string result;
    try
    {
      result = handler.perform(msg);
    }
    catch (std::exception const &ex)
    {
      platform.acc_send(make_reply(msg, self, Performative::Failure, ex.what()));
      return;
    }
    platform.acc_send(make_reply(msg, self, Performative::Inform, std::move(result)));
  };
}

}  // namespace agora::acl
