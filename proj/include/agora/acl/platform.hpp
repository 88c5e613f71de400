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

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "agora/acl/mailbox.hpp"
#include "agora/acl/message.hpp"
#include "agora/core/error.hpp"

namespace agora::acl {

class AclError : public Error
{
public:
  using Error::Error;
};

class DuplicateName : public AclError
{
public:
  explicit DuplicateName(std::string const &name)
    : AclError("agent name already registered: " + name)
  {}
};

class UnknownAgent : public AclError
{
public:
  explicit UnknownAgent(std::string const &name)
    : AclError("unknown agent: " + name)
  {}
};

class UnknownSender : public AclError
{
public:
  explicit UnknownSender(std::string const &name)
    : AclError("sender is not a registered agent: " + name)
  {}
};

class DuplicateService : public AclError
{
public:
  using AclError::AclError;
};

class InvalidMessage : public AclError
{
public:
  using AclError::AclError;
};

struct ServiceDescription
{
  AgentId     provider;
  std::string service_type;
  std::string service_name;

  friend bool operator==(ServiceDescription const &, ServiceDescription const &) = default;
};

/// Reaction of a reactive agent to one delivered message.
using Behaviour = std::function<void(AclMessage const &)>;

/**
 * Single-container agent platform: the AMS white pages, the DF yellow pages and the ACC
 * message transport.
 *
 * Agents are either passive (messages accumulate in the mailbox until the owner pops them)
 * or reactive (a Behaviour is attached). Reactive agents are driven by whichever thread
 * delivers to them; a per-agent drain flag keeps exactly one consumer per mailbox, so a
 * behaviour that sends to an agent already draining only enqueues. Locks are never held
 * while a behaviour runs.
 */
class Platform
{
public:
  static constexpr std::string_view kAmsName = "ams";
  static constexpr std::string_view kDfName  = "df";
  static constexpr std::string_view kAccName = "acc";

  explicit Platform(std::string address = "agora");

  Platform(Platform const &)            = delete;
  Platform &operator=(Platform const &) = delete;

  std::string const &address() const noexcept
  {
    return address_;
  }

  // AMS
  AgentId              ams_register(std::string_view name, Behaviour behaviour = {});
  void                 ams_deregister(AgentId const &aid);
  AgentId              ams_lookup(std::string_view name) const;
  bool                 is_registered(AgentId const &aid) const;
  std::vector<AgentId> ams_agents() const;
  void                 set_behaviour(AgentId const &aid, Behaviour behaviour);

  AgentId const &ams_id() const noexcept
  {
    return ams_;
  }
  AgentId const &df_id() const noexcept
  {
    return df_;
  }
  AgentId const &acc_id() const noexcept
  {
    return acc_;
  }

  // DF
  void                            df_register(ServiceDescription const &sd);
  void                            df_deregister(ServiceDescription const &sd);
  std::vector<ServiceDescription> df_search(std::string_view service_type) const;

  // ACC
  void                     acc_send(AclMessage msg);
  std::shared_ptr<Mailbox> mailbox(AgentId const &aid) const;

  /// Fresh conversation id from the platform counter.
  std::string next_conversation_id();

  /// One line per registry entry: "AMS\t<name>\t<address>" then "DF\t<provider>\t<type>\t<name>".
  std::string dump() const;

private:
  struct Slot
  {
    AgentId                  id;
    std::shared_ptr<Mailbox> mailbox = std::make_shared<Mailbox>();
    std::mutex               dispatch_mutex;
    Behaviour                behaviour;
    bool                     draining = false;
    bool                     retired  = false;
  };

  std::shared_ptr<Slot> find_slot(AgentId const &aid) const;
  void                  dispatch(std::shared_ptr<Slot> const &slot);

  std::string address_;
  AgentId     ams_;
  AgentId     df_;
  AgentId     acc_;

  mutable std::shared_mutex                    registry_mutex_;
  std::map<std::string, std::shared_ptr<Slot>, std::less<>> agents_;
  std::vector<ServiceDescription>              services_;

  std::atomic<std::uint64_t> conversation_counter_{0};
};

}  // namespace agora::acl
