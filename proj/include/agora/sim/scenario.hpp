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
#include <variant>
#include <vector>

#include "agora/core/money.hpp"
#include "agora/core/time.hpp"
#include "agora/sim/oracle.hpp"

namespace agora::sim {

class InvalidScenario : public SimError
{
public:
  using SimError::SimError;
};

// All times in a scenario are offsets from its epoch.

struct ScenarioAuction
{
  std::string id;
  std::string item_name;
  std::string category;
  std::string seller = "seller";
  Money       start_price;
  Money       increment{1};
  Seconds     open{0};
  Seconds     duration{0};
};

struct TimedBid
{
  Seconds at{0};
  Money   amount;
};

struct LiveActor
{
  std::vector<TimedBid> bids;
};

/// What an auto-bid owner does when told the maximum is reached.
struct AtMaxPolicy
{
  enum class Kind
  {
    Wait,
    Cancel,
    Raise,
  };
  Kind  kind = Kind::Wait;
  Money raise_to;
};

struct AutoActor
{
  Money       max_amount;
  Seconds     join{0};
  AtMaxPolicy at_max;
};

/// `count` live bids at seeded random times in [from, to]; each bids the required minimum
/// plus a random 0..max_steps increments.
struct RandomActor
{
  std::size_t   count = 0;
  Seconds       from{0};
  Seconds       to{0};
  std::uint64_t max_steps = 0;
};

struct ActorSpec
{
  std::string                                   name;
  std::string                                   auction_id;
  std::variant<LiveActor, AutoActor, RandomActor> kind;
};

struct ScenarioSpec
{
  std::uint64_t                seed = 0;
  Timestamp                    epoch;
  Seconds                      horizon{0};
  std::vector<ScenarioAuction> auctions;
  std::vector<ActorSpec>       actors;
};

/// 2026-01-01T00:00:00Z, used when a scenario file names no epoch.
Timestamp default_epoch();

/// Throws InvalidScenario naming the first problem.
void validate(ScenarioSpec const &spec);

/// JSON scenario file. Throws InvalidScenario.
ScenarioSpec parse_scenario(std::string_view text);

}  // namespace agora::sim
