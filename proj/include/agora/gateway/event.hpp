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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "agora/core/error.hpp"
#include "agora/core/time.hpp"

namespace agora::gateway {

using Json = nlohmann::ordered_json;

enum class EventKind
{
  AuctionOpened,
  BidAccepted,
  BidRejected,
  Extended,
  AutobidCreated,
  AutobidAtMax,
  AutobidRaised,
  AutobidCancelled,
  Closed,
  AdviceServed,
  RecordsLoaded,
};

std::string_view         to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view text);

struct Event
{
  std::uint64_t sequence = 0;
  Timestamp     time;
  EventKind     kind = EventKind::AuctionOpened;
  /// Empty for events not tied to an auction.
  std::string auction_id;
  Json        payload = Json::object();

  friend bool operator==(Event const &, Event const &) = default;
};

class BadEvent : public Error
{
public:
  using Error::Error;
};

/// One log line without the newline; fields always in the order seq, time, kind, auction,
/// payload.
std::string encode(Event const &event);

/// Throws BadEvent.
Event decode(std::string_view line);

/// The JSON object form used by the API and the event stream.
Json to_json(Event const &event);

}  // namespace agora::gateway
