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

#include "agora/gateway/event_log.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace agora::gateway {

namespace {

void check_sequence(Event const &event, std::uint64_t expected)
{
  if (event.sequence != expected)
  {
    throw CorruptLog(expected, "found sequence " + std::to_string(event.sequence));
  }
}

void write_all(int fd, std::string const &data)
{
  std::size_t done = 0;
  while (done < data.size())
  {
    auto const n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0)
    {
      if (errno == EINTR)
      {
        continue;
      }
      throw Error(std::string("event log write failed: ") + std::strerror(errno));
    }
    done += static_cast<std::size_t>(n);
  }
}

}  // namespace

LogContents read_log(std::filesystem::path const &file)
{
  LogContents out;
  std::ifstream in(file, std::ios::binary);
  if (!in)
  {
    return out;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string const text = buffer.str();

  std::size_t pos = 0;
  while (pos < text.size())
  {
    auto const          nl       = text.find('\n', pos);
    bool const          complete = nl != std::string::npos;
    std::string_view    line(text.data() + pos, (complete ? nl : text.size()) - pos);
    std::uint64_t const expected = out.events.size() + 1;
    try
    {
      auto event = decode(line);
      check_sequence(event, expected);
      out.events.push_back(std::move(event));
    }
    catch (BadEvent const &ex)
    {
      if (!complete)
      {
        out.truncated = 1;
        break;
      }
      throw CorruptLog(expected, ex.what());
    }
    if (!complete)
    {
      out.missing_final_newline = true;
      out.valid_bytes           = text.size();
      break;
    }
    pos             = nl + 1;
    out.valid_bytes = pos;
  }
  return out;
}

EventLog::EventLog() = default;

EventLog::EventLog(std::filesystem::path file)
{
  auto contents = read_log(file);
  events_       = std::move(contents.events);
  truncated_    = contents.truncated;

  fd_ = ::open(file.c_str(), O_WRONLY | O_CREAT, 0644);
  if (fd_ < 0)
  {
    throw Error("cannot open event log " + file.string() + ": " + std::strerror(errno));
  }
  if (::ftruncate(fd_, static_cast<off_t>(contents.valid_bytes)) != 0 ||
      ::lseek(fd_, 0, SEEK_END) < 0)
  {
    ::close(fd_);
    throw Error("cannot recover event log " + file.string() + ": " + std::strerror(errno));
  }
  if (contents.missing_final_newline)
  {
    write_all(fd_, "\n");
  }
  ::fsync(fd_);
}

EventLog::~EventLog()
{
  if (fd_ >= 0)
  {
    ::close(fd_);
  }
}

Event EventLog::append(EventKind kind, Timestamp time, std::string auction_id, Json payload)
{
  if (payload.is_null())
  {
    payload = Json::object();
  }
  std::lock_guard lock(mutex_);
  Event           event{events_.size() + 1, time, kind, std::move(auction_id), std::move(payload)};
  if (fd_ >= 0)
  {
    write_all(fd_, encode(event) + "\n");
    ::fdatasync(fd_);
  }
  events_.push_back(event);
  appended_.notify_all();
  return event;
}

std::vector<Event> EventLog::events() const
{
  std::lock_guard lock(mutex_);
  return events_;
}

std::vector<Event> EventLog::since(std::uint64_t after) const
{
  std::lock_guard lock(mutex_);
  if (after >= events_.size())
  {
    return {};
  }
  return {events_.begin() + static_cast<std::ptrdiff_t>(after), events_.end()};
}

bool EventLog::wait_beyond(std::uint64_t after, std::chrono::milliseconds timeout) const
{
  std::unique_lock lock(mutex_);
  return appended_.wait_for(lock, timeout, [&] { return events_.size() > after; });
}

std::uint64_t EventLog::last_sequence() const
{
  std::lock_guard lock(mutex_);
  return events_.size();
}

}  // namespace agora::gateway
