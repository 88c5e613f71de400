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

#include "agora/gateway/event.hpp"

#include <array>

namespace agora::gateway {

namespace {

constexpr std::array<std::string_view, 11> kNames = {
    "AUCTION_OPENED",    "BID_ACCEPTED", "BID_REJECTED",  "EXTENDED",
    "AUTOBID_CREATED",   "AUTOBID_AT_MAX", "AUTOBID_RAISED", "AUTOBID_CANCELLED",
    "CLOSED",            "ADVICE_SERVED", "RECORDS_LOADED",
};

}  // namespace

std::string_view to_string(EventKind kind)
{
  return kNames.at(static_cast<std::size_t>(kind));
}

std::optional<EventKind> parse_event_kind(std::string_view text)
{
  for (std::size_t i = 0; i < kNames.size(); ++i)
  {
    if (kNames[i] == text)
    {
      return static_cast<EventKind>(i);
    }
  }
  return std::nullopt;
}

Json to_json(Event const &event)
{
  Json j;
  j["seq"]     = event.sequence;
  j["time"]    = format_iso8601(event.time);
  j["kind"]    = to_string(event.kind);
  j["auction"] = event.auction_id;
  j["payload"] = event.payload;
  return j;
}

std::string encode(Event const &event)
{
  return to_json(event).dump();
}

Event decode(std::string_view line)
{
  Json j;
  try
  {
    j = Json::parse(line);
  }
  catch (Json::parse_error const &ex)
  {
    throw BadEvent(std::string("not a JSON record: ") + ex.what());
  }
  if (!j.is_object() || j.size() != 5)
  {
    throw BadEvent("event record must have exactly seq, time, kind, auction, payload");
  }
  auto const it = j.begin();
  static constexpr std::array<std::string_view, 5> kOrder = {"seq", "time", "kind", "auction",
                                                            "payload"};
  std::size_t i = 0;
  for (auto field = it; field != j.end(); ++field, ++i)
  {
    if (field.key() != kOrder[i])
    {
      throw BadEvent("event fields out of order at " + field.key());
    }
  }

  Event event;
  try
  {
    event.sequence = j.at("seq").get<std::uint64_t>();
    auto const t   = parse_iso8601(j.at("time").get<std::string>());
    auto const k   = parse_event_kind(j.at("kind").get<std::string>());
    if (!t || !k)
    {
      throw BadEvent("bad time or kind");
    }
    event.time       = *t;
    event.kind       = *k;
    event.auction_id = j.at("auction").get<std::string>();
    event.payload    = j.at("payload");
  }
  catch (Json::exception const &ex)
  {
    throw BadEvent(std::string("bad event field: ") + ex.what());
  }
  if (!event.payload.is_object())
  {
    throw BadEvent("payload must be an object");
  }
  return event;
}

}  // namespace agora::gateway
