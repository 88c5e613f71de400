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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "agora/acl/platform.hpp"

namespace agora::acl {

inline constexpr std::string_view          kRequestProtocol = "fipa-request";
inline constexpr std::chrono::milliseconds kDefaultProtocolTimeout{5000};

class ProtocolViolation : public AclError
{
public:
  using AclError::AclError;
};

class ProtocolTimeout : public AclError
{
public:
  using AclError::AclError;
};

/// Full exchange of one request interaction, initiator's REQUEST first.
struct ProtocolOutcome
{
  std::vector<AclMessage> transcript;

  AclMessage const &terminal() const
  {
    return transcript.back();
  }

  std::vector<Performative> performatives() const;
};

/**
 * Runs REQUEST -> (AGREE -> (INFORM | FAILURE)) | REFUSE from `initiator` to `participant`.
 *
 * The initiator must be a passive agent: replies are taken from its mailbox, selecting only
 * messages of this conversation, so several protocols may run concurrently from one
 * initiator. Throws ProtocolViolation on any other reply sequence and ProtocolTimeout when
 * the next expected reply does not arrive before the deadline.
 */
ProtocolOutcome run_request_protocol(Platform &platform, AgentId const &initiator,
                                     AgentId const &participant, std::string content,
                                     std::chrono::milliseconds timeout = kDefaultProtocolTimeout);

/// Participant side of the request protocol.
struct RequestHandler
{
  /// Returns a refusal reason to REFUSE, or nullopt to AGREE.
  std::function<std::optional<std::string>(AclMessage const &)> screen;
  /// Produces the INFORM content; an exception turns into FAILURE carrying what().
  std::function<std::string(AclMessage const &)> perform;
};

/// Behaviour answering REQUEST messages through `handler`; anything else is answered with
/// FAILURE.
Behaviour make_request_responder(Platform &platform, AgentId self, RequestHandler handler);

}  // namespace agora::acl
