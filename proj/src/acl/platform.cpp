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

#include "agora/acl/platform.hpp"

#include <algorithm>
#include <sstream>

namespace agora::acl {

Platform::Platform(std::string address)
  : address_(std::move(address))
{
  ams_ = ams_register(kAmsName);
  df_  = ams_register(kDfName);
  acc_ = ams_register(kAccName);
}

AgentId Platform::ams_register(std::string_view name, Behaviour behaviour)
{
  if (name.empty())
  {
    throw InvalidMessage("agent name must be non-empty");
  }
  auto slot       = std::make_shared<Slot>();
  slot->id        = AgentId{std::string(name), address_};
  slot->behaviour = std::move(behaviour);

  std::unique_lock lock(registry_mutex_);
  auto const [it, inserted] = agents_.try_emplace(std::string(name), slot);
  if (!inserted)
  {
    throw DuplicateName(std::string(name));
  }
  return slot->id;
}

void Platform::ams_deregister(AgentId const &aid)
{
  std::shared_ptr<Slot> slot;
  {
    std::unique_lock lock(registry_mutex_);
    auto const it = agents_.find(aid.name);
    if (it == agents_.end() || it->second->id != aid)
    {
      throw UnknownAgent(aid.name);
    }
    slot = it->second;
    agents_.erase(it);
    std::erase_if(services_, [&](ServiceDescription const &sd) { return sd.provider == aid; });
  }
  std::lock_guard dispatch_lock(slot->dispatch_mutex);
  slot->retired = true;
  slot->mailbox->clear();
}

AgentId Platform::ams_lookup(std::string_view name) const
{
  std::shared_lock lock(registry_mutex_);
  auto const       it = agents_.find(name);
  if (it == agents_.end())
  {
    throw UnknownAgent(std::string(name));
  }
  return it->second->id;
}

bool Platform::is_registered(AgentId const &aid) const
{
  return find_slot(aid) != nullptr;
}

std::vector<AgentId> Platform::ams_agents() const
{
  std::shared_lock     lock(registry_mutex_);
  std::vector<AgentId> out;
  out.reserve(agents_.size());
  for (auto const &[name, slot] : agents_)
  {
    out.push_back(slot->id);
  }
  return out;
}

void Platform::set_behaviour(AgentId const &aid, Behaviour behaviour)
{
  auto slot = find_slot(aid);
  if (!slot)
  {
    throw UnknownAgent(aid.name);
  }
  {
    std::lock_guard lock(slot->dispatch_mutex);
    slot->behaviour = std::move(behaviour);
  }
  dispatch(slot);
}

void Platform::df_register(ServiceDescription const &sd)
{
  std::unique_lock lock(registry_mutex_);
  auto const       it = agents_.find(sd.provider.name);
  if (it == agents_.end() || it->second->id != sd.provider)
  {
    throw UnknownAgent(sd.provider.name);
  }
  if (std::find(services_.begin(), services_.end(), sd) != services_.end())
  {
    throw DuplicateService("service already registered: " + sd.provider.name + "/" +
                           sd.service_type + "/" + sd.service_name);
  }
  services_.push_back(sd);
}

void Platform::df_deregister(ServiceDescription const &sd)
{
  std::unique_lock lock(registry_mutex_);
  auto const       it = std::find(services_.begin(), services_.end(), sd);
  if (it == services_.end())
  {
    throw UnknownAgent(sd.provider.name);
  }
  services_.erase(it);
}

std::vector<ServiceDescription> Platform::df_search(std::string_view service_type) const
{
  std::shared_lock                lock(registry_mutex_);
  std::vector<ServiceDescription> out;
  for (auto const &sd : services_)
  {
    if (sd.service_type == service_type)
    {
      out.push_back(sd);
    }
  }
  return out;
}

std::shared_ptr<Platform::Slot> Platform::find_slot(AgentId const &aid) const
{
  std::shared_lock lock(registry_mutex_);
  auto const       it = agents_.find(aid.name);
  if (it == agents_.end() || it->second->id != aid)
  {
    return nullptr;
  }
  return it->second;
}

std::shared_ptr<Mailbox> Platform::mailbox(AgentId const &aid) const
{
  auto slot = find_slot(aid);
  if (!slot)
  {
    throw UnknownAgent(aid.name);
  }
  return slot->mailbox;
}

std::string Platform::next_conversation_id()
{
  return std::to_string(++conversation_counter_);
}

void Platform::acc_send(AclMessage msg)
{
  if (msg.receivers.empty())
  {
    throw InvalidMessage("message has no receivers");
  }

  std::vector<std::shared_ptr<Slot>> to_dispatch;
  {
    std::shared_lock lock(registry_mutex_);
    auto const       sender_it = agents_.find(msg.sender.name);
    if (sender_it == agents_.end() || sender_it->second->id != msg.sender)
    {
      throw UnknownSender(msg.sender.name);
    }
    auto const &sender_slot = sender_it->second;

    for (auto const &receiver : msg.receivers)
    {
      auto const it = agents_.find(receiver.name);
      if (it != agents_.end() && it->second->id == receiver)
      {
        it->second->mailbox->push(msg);
        to_dispatch.push_back(it->second);
        continue;
      }

      AclMessage bounce = make_reply(msg, acc_, Performative::Failure,
                                     "unknown-receiver " + receiver.name + "@" + receiver.address);
      sender_slot->mailbox->push(std::move(bounce));
      to_dispatch.push_back(sender_slot);
    }
  }

  for (auto const &slot : to_dispatch)
  {
    dispatch(slot);
  }
}

void Platform::dispatch(std::shared_ptr<Slot> const &slot)
{
  {
    std::lock_guard lock(slot->dispatch_mutex);
    if (!slot->behaviour || slot->draining || slot->retired)
    {
      return;
    }
    slot->draining = true;
  }

  while (true)
  {
    std::optional<AclMessage> next;
    Behaviour                 behaviour;
    {
      std::lock_guard lock(slot->dispatch_mutex);
      if (!slot->retired && slot->behaviour)
      {
        next = slot->mailbox->try_pop();
      }
      if (!next)
      {
        slot->draining = false;
        return;
      }
      behaviour = slot->behaviour;
    }

    try
    {
      behaviour(*next);
    }
    catch (std::exception const &ex)
    {
      // Behaviours are expected to answer in-band; an escaped exception becomes a FAILURE
      // to the sender unless that would bounce a failure back and forth.
      if (next->performative != Performative::Failure && next->sender != acc_)
      {
        try
        {
          acc_send(make_reply(*next, slot->id, Performative::Failure, ex.what()));
        }
        catch (AclError const &)
        {
        }
      }
    }
  }
}

std::string Platform::dump() const
{
  std::shared_lock   lock(registry_mutex_);
  std::ostringstream out;
  for (auto const &[name, slot] : agents_)
  {
    out << "AMS\t" << slot->id.name << '\t' << slot->id.address << '\n';
  }
  for (auto const &sd : services_)
  {
    out << "DF\t" << sd.provider.name << '\t' << sd.service_type << '\t' << sd.service_name
        << '\n';
  }
  return out.str();
}

}  // namespace agora::acl
