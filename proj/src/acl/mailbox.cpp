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

#include "agora/acl/mailbox.hpp"

#include <algorithm>

namespace agora::acl {

void Mailbox::push(AclMessage msg)
{
  {
    std::lock_guard lock(mutex_);
    queue_.push_back(std::move(msg));
  }
  arrived_.notify_all();
}

std::optional<AclMessage> Mailbox::try_pop()
{
  std::lock_guard lock(mutex_);
  if (queue_.empty())
  {
    return std::nullopt;
  }
  AclMessage msg = std::move(queue_.front());
  queue_.pop_front();
  return msg;
}

std::optional<AclMessage> Mailbox::pop_matching(Selector const &select, Clock::time_point deadline)
{
  std::unique_lock lock(mutex_);
  while (true)
  {
    auto const it = std::find_if(queue_.begin(), queue_.end(), select);
    if (it != queue_.end())
    {
      AclMessage msg = std::move(*it);
      queue_.erase(it);
      return msg;
    }
    if (arrived_.wait_until(lock, deadline) == std::cv_status::timeout)
    {
      auto const late = std::find_if(queue_.begin(), queue_.end(), select);
      if (late == queue_.end())
      {
        return std::nullopt;
      }
      AclMessage msg = std::move(*late);
      queue_.erase(late);
      return msg;
    }
  }
}

std::size_t Mailbox::size() const
{
  std::lock_guard lock(mutex_);
  return queue_.size();
}

void Mailbox::clear()
{
  std::lock_guard lock(mutex_);
  queue_.clear();
}

}  // namespace agora::acl
