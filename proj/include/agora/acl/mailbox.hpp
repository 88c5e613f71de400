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
#include <condition_variable>
#include <deque>
#include <functional>
#include <mutex>
#include <optional>

#include "agora/acl/message.hpp"

namespace agora::acl {

/// Unbounded FIFO of messages. Producers may be concurrent; pop_matching lets several
/// waiters share one mailbox by selecting only the messages addressed to them.
class Mailbox
{
public:
  using Clock    = std::chrono::steady_clock;
  using Selector = std::function<bool(AclMessage const &)>;

  void push(AclMessage msg);

  std::optional<AclMessage> try_pop();

  /// Removes the oldest message satisfying `select`, waiting until `deadline` for one.
  std::optional<AclMessage> pop_matching(Selector const &select, Clock::time_point deadline);

  std::size_t size() const;
  bool        empty() const
  {
    return size() == 0;
  }
  void clear();

private:
  mutable std::mutex      mutex_;
  std::condition_variable arrived_;
  std::deque<AclMessage>  queue_;
};

}  // namespace agora::acl
