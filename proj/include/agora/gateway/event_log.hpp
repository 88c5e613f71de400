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
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <vector>

#include "agora/gateway/event.hpp"

namespace agora::gateway {

/// A complete line of the log is unreadable or out of sequence.
class CorruptLog : public Error
{
public:
  CorruptLog(std::uint64_t sequence, std::string const &why)
    : Error("corrupt event log at sequence " + std::to_string(sequence) + ": " + why)
    , sequence_(sequence)
  {}

  std::uint64_t sequence() const noexcept
  {
    return sequence_;
  }

private:
  std::uint64_t sequence_;
};

struct LogContents
{
  std::vector<Event> events;
  /// 1 when the final line was cut short and dropped.
  std::size_t truncated = 0;
  /// Length of the prefix holding the complete events.
  std::uintmax_t valid_bytes = 0;
  bool           missing_final_newline = false;
};

/// A missing file reads as empty. Throws CorruptLog.
LogContents read_log(std::filesystem::path const &file);

/**
 * Append-only event log; one JSON record per line, fsync'd before append() returns.
 * Sequences start at 1 and are gap-free. Also keeps every event in memory for the stream.
 */
class EventLog
{
public:
  /// In-memory only.
  EventLog();

  /// Opens (creating if needed) and recovers `file`, dropping a truncated final line.
  explicit EventLog(std::filesystem::path file);
  ~EventLog();

  EventLog(EventLog const &)            = delete;
  EventLog &operator=(EventLog const &) = delete;

  Event append(EventKind kind, Timestamp time, std::string auction_id, Json payload);

  std::vector<Event> events() const;
  /// Events with sequence greater than `after`.
  std::vector<Event> since(std::uint64_t after) const;
  /// Blocks until an event beyond `after` exists or the timeout passes.
  bool wait_beyond(std::uint64_t after, std::chrono::milliseconds timeout) const;

  std::uint64_t last_sequence() const;
  std::size_t   truncated_on_open() const noexcept
  {
    return truncated_;
  }

private:
  mutable std::mutex              mutex_;
  mutable std::condition_variable appended_;
  std::vector<Event>              events_;
  int                             fd_        = -1;
  std::size_t                     truncated_ = 0;
};

}  // namespace agora::gateway
