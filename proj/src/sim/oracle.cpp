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

#include "agora/sim/oracle.hpp"

#include "agora/sim/simulator.hpp"

namespace agora::sim {

std::string_view to_string(Party party)
{
  return party == Party::A ? "A" : "B";
}

DuelResult oracle_duel(Money max_a, Money max_b, Money increment, Money start)
{
  if (increment < Money{1})
  {
    throw InvalidParams("increment must be at least 1");
  }
  if (max_a < start || max_b < start)
  {
    throw InvalidParams("both maxima must reach the start price");
  }

  DuelResult state{Party::A, start};
  while (true)
  {
    Party const challenger = state.winner == Party::A ? Party::B : Party::A;
    Money const limit      = challenger == Party::A ? max_a : max_b;
    Money const next       = state.price + increment;
    if (next > limit)
    {
      return state;
    }
    state = {challenger, next};
  }
}

DuelResult run_duel_agents(DuelPoint const &point)
{
  ScenarioSpec spec;
  spec.seed    = 0;
  spec.epoch   = default_epoch();
  spec.horizon = Seconds{3600};
  spec.auctions.push_back(
      {"duel", "duel item", "", "seller", point.start, point.increment, Seconds{0}, Seconds{3600}});
  spec.actors.push_back({"A", "duel", AutoActor{point.max_a, Seconds{0}, {}}});
  spec.actors.push_back({"B", "duel", AutoActor{point.max_b, Seconds{0}, {}}});

  auto const transcript = run_scenario(spec);
  auto const &outcome   = transcript.outcomes.at(0);
  if (!outcome.winner || !outcome.winning_amount)
  {
    throw SimError("duel closed without a winner");
  }
  return {outcome.winner->name == "A" ? Party::A : Party::B, *outcome.winning_amount};
}

std::vector<Money> DuelGrid::range(Money lo, Money hi, Money step)
{
  if (step < Money{1})
  {
    throw InvalidParams("grid step must be at least 1");
  }
  std::vector<Money> out;
  for (auto v = lo; v <= hi; v = v + step)
  {
    out.push_back(v);
  }
  return out;
}

FuzzReport fuzz_duels(DuelGrid const &grid)
{
  FuzzReport report;
  for (auto const start : grid.starts)
  {
    for (auto const inc : grid.increments)
    {
      for (auto const a : grid.max_a)
      {
        for (auto const b : grid.max_b)
        {
          if (a == b && !grid.include_equal)
          {
            continue;
          }
          DuelPoint const point{a, b, inc, start};
          auto const      expected = oracle_duel(a, b, inc, start);
          auto const      actual   = run_duel_agents(point);
          ++report.points;
          if (!(expected == actual))
          {
            report.mismatches.push_back({point, expected, actual});
          }
        }
      }
    }
  }
  return report;
}

}  // namespace agora::sim
