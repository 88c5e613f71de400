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

#include "agora/sim/scenario.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace agora::sim {

using nlohmann::json;

Timestamp default_epoch()
{
  return from_unix_seconds(1767225600);
}

namespace {

std::string require_nonempty(std::string const &value, std::string const &what)
{
  if (value.empty())
  {
    throw InvalidScenario(what + " must not be empty");
  }
  return value;
}

void check_time(Seconds at, Seconds horizon, std::string const &what)
{
  if (at < Seconds{0} || at > horizon)
  {
    throw InvalidScenario(what + " at +" + std::to_string(at.count()) + "s lies outside the horizon");
  }
}

}  // namespace

void validate(ScenarioSpec const &spec)
{
  if (spec.horizon <= Seconds{0})
  {
    throw InvalidScenario("horizon must be positive");
  }

  std::set<std::string> auction_ids;
  for (auto const &a : spec.auctions)
  {
    require_nonempty(a.id, "auction id");
    if (!auction_ids.insert(a.id).second)
    {
      throw InvalidScenario("duplicate auction id " + a.id);
    }
    if (a.duration <= Seconds{0})
    {
      throw InvalidScenario("auction " + a.id + ": duration must be positive");
    }
    if (a.increment < Money{1})
    {
      throw InvalidScenario("auction " + a.id + ": increment must be at least 1");
    }
    check_time(a.open, spec.horizon, "auction " + a.id + " opening");
    check_time(a.open + a.duration, spec.horizon, "auction " + a.id + " close");
  }

  std::set<std::string> names;
  for (auto const &actor : spec.actors)
  {
    require_nonempty(actor.name, "actor name");
    if (!names.insert(actor.name).second)
    {
      throw InvalidScenario("duplicate actor " + actor.name);
    }
    if (!auction_ids.contains(actor.auction_id))
    {
      throw InvalidScenario("actor " + actor.name + " names unknown auction " + actor.auction_id);
    }
    std::string const who  = "actor " + actor.name;
    auto const        open = std::find_if(spec.auctions.begin(), spec.auctions.end(),
                                   [&](ScenarioAuction const &a) { return a.id == actor.auction_id; })
                          ->open;
    auto const not_before_open = [&](Seconds at, std::string const &what) {
      if (at < open)
      {
        throw InvalidScenario(what + " comes before auction " + actor.auction_id + " opens");
      }
    };
    if (auto const *live = std::get_if<LiveActor>(&actor.kind))
    {
      for (auto const &bid : live->bids)
      {
        check_time(bid.at, spec.horizon, who + " bid");
        not_before_open(bid.at, who + " bid");
      }
    }
    else if (auto const *autob = std::get_if<AutoActor>(&actor.kind))
    {
      check_time(autob->join, spec.horizon, who + " join");
      not_before_open(autob->join, who + " join");
      if (autob->at_max.kind == AtMaxPolicy::Kind::Raise && autob->at_max.raise_to <= autob->max_amount)
      {
        throw InvalidScenario(who + ": raise_to must exceed max");
      }
    }
    else
    {
      auto const &random = std::get<RandomActor>(actor.kind);
      if (random.from > random.to)
      {
        throw InvalidScenario(who + ": from after to");
      }
      check_time(random.from, spec.horizon, who + " window");
      check_time(random.to, spec.horizon, who + " window");
      not_before_open(random.from, who + " window");
    }
  }
}

namespace {

Seconds seconds_at(json const &j, char const *key, std::int64_t fallback)
{
  return Seconds{j.value(key, fallback)};
}

Money money_at(json const &j, char const *key)
{
  return Money{j.at(key).get<std::int64_t>()};
}

ActorSpec parse_actor(json const &j)
{
  ActorSpec actor;
  actor.name       = j.at("name").get<std::string>();
  actor.auction_id = j.at("auction").get<std::string>();

  int kinds = 0;
  if (j.contains("live"))
  {
    ++kinds;
    LiveActor live;
    for (auto const &b : j.at("live"))
    {
      live.bids.push_back({Seconds{b.at("at").get<std::int64_t>()}, money_at(b, "amount")});
    }
    actor.kind = std::move(live);
  }
  if (j.contains("auto"))
  {
    ++kinds;
    auto const &a = j.at("auto");
    AutoActor   autob{money_at(a, "max"), seconds_at(a, "join", 0), {}};
    if (a.contains("at_max"))
    {
      auto const &policy = a.at("at_max");
      if (policy.is_string() && policy.get<std::string>() == "wait")
      {
        autob.at_max.kind = AtMaxPolicy::Kind::Wait;
      }
      else if (policy.is_string() && policy.get<std::string>() == "cancel")
      {
        autob.at_max.kind = AtMaxPolicy::Kind::Cancel;
      }
      else if (policy.is_object() && policy.contains("raise_to"))
      {
        autob.at_max = {AtMaxPolicy::Kind::Raise, money_at(policy, "raise_to")};
      }
      else
      {
        throw InvalidScenario("actor " + actor.name + ": unknown at_max policy " + policy.dump());
      }
    }
    actor.kind = autob;
  }
  if (j.contains("random"))
  {
    ++kinds;
    auto const &r = j.at("random");
    actor.kind    = RandomActor{r.at("count").get<std::size_t>(), seconds_at(r, "from", 0),
                             Seconds{r.at("to").get<std::int64_t>()},
                             r.value("max_steps", std::uint64_t{0})};
  }
  if (kinds != 1)
  {
    throw InvalidScenario("actor " + actor.name + " needs exactly one of live, auto, random");
  }
  return actor;
}

}  // namespace

ScenarioSpec parse_scenario(std::string_view text)
{
  ScenarioSpec spec;
  try
  {
    auto const j = json::parse(text);
    spec.seed    = j.value("seed", std::uint64_t{0});
    spec.epoch   = default_epoch();
    if (j.contains("epoch"))
    {
      auto const epoch = parse_iso8601(j.at("epoch").get<std::string>());
      if (!epoch)
      {
        throw InvalidScenario("epoch is not an ISO 8601 UTC timestamp");
      }
      spec.epoch = *epoch;
    }
    spec.horizon = Seconds{j.at("horizon").get<std::int64_t>()};

    for (auto const &a : j.at("auctions"))
    {
      ScenarioAuction auction;
      auction.id          = a.at("id").get<std::string>();
      auction.item_name   = a.value("item", auction.id);
      auction.category    = a.value("category", std::string{});
      auction.seller      = a.value("seller", std::string{"seller"});
      auction.start_price = money_at(a, "start_price");
      auction.increment   = Money{a.value("increment", std::int64_t{1})};
      auction.open        = seconds_at(a, "open", 0);
      auction.duration    = Seconds{a.at("duration").get<std::int64_t>()};
      spec.auctions.push_back(std::move(auction));
    }
    if (j.contains("actors"))
    {
      for (auto const &a : j.at("actors"))
      {
        spec.actors.push_back(parse_actor(a));
      }
    }
  }
  catch (json::exception const &ex)
  {
    throw InvalidScenario(std::string("scenario file: ") + ex.what());
  }
  catch (std::invalid_argument const &ex)
  {
    throw InvalidScenario(std::string("scenario file: ") + ex.what());
  }
  validate(spec);
  return spec;
}

}  // namespace agora::sim
