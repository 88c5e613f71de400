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

#include <gtest/gtest.h>

#include "agora/sim/oracle.hpp"
#include "agora/sim/simulator.hpp"
#include "test_support.hpp"

namespace {

using namespace agora;
using namespace agora::sim;
using agora::testing::read_fixture;

ScenarioSpec one_auction(Seconds horizon = Seconds{7200})
{
  ScenarioSpec spec;
  spec.seed    = 1;
  spec.epoch   = default_epoch();
  spec.horizon = horizon;
  spec.auctions.push_back({"A-1", "Sony Digital Camera C-3020", "digital-camera", "seller", Money{50},
                           Money{5}, Seconds{0}, Seconds{3600}});
  return spec;
}

std::vector<TranscriptEntry> of_kind(Transcript const &t, std::string const &kind)
{
  std::vector<TranscriptEntry> out;
  for (auto const &e : t.entries)
  {
    if (e.kind == kind)
    {
      out.push_back(e);
    }
  }
  return out;
}

TEST(OracleDuel, Examples)
{
  // Strict alternation: A 50, B 55, A 60, B 65, A 70, B 75, A 80; B cannot reach 85.
  EXPECT_EQ(oracle_duel(Money{100}, Money{80}, Money{5}, Money{50}), (DuelResult{Party::A, Money{80}}));
  EXPECT_EQ(oracle_duel(Money{60}, Money{80}, Money{5}, Money{60}), (DuelResult{Party::B, Money{65}}));
  EXPECT_EQ(oracle_duel(Money{100}, Money{54}, Money{5}, Money{50}), (DuelResult{Party::A, Money{50}}));
  EXPECT_EQ(oracle_duel(Money{70}, Money{70}, Money{5}, Money{50}), (DuelResult{Party::A, Money{70}}));
}

TEST(OracleDuel, InvalidParams)
{
  EXPECT_THROW(oracle_duel(Money{100}, Money{80}, Money{0}, Money{50}), InvalidParams);
  EXPECT_THROW(oracle_duel(Money{40}, Money{80}, Money{5}, Money{50}), InvalidParams);
  EXPECT_THROW(oracle_duel(Money{100}, Money{40}, Money{5}, Money{50}), InvalidParams);
}

TEST(OracleDuel, AgentsAgreeOnExamples)
{
  for (auto const &p : {DuelPoint{Money{100}, Money{80}, Money{5}, Money{50}},
                        DuelPoint{Money{60}, Money{80}, Money{5}, Money{60}},
                        DuelPoint{Money{100}, Money{54}, Money{5}, Money{50}}})
  {
    EXPECT_EQ(run_duel_agents(p), oracle_duel(p.max_a, p.max_b, p.increment, p.start));
  }
}

TEST(FuzzDuels, EmptyGrid)
{
  auto const r = fuzz_duels({});
  EXPECT_EQ(r.points, 0u);
  EXPECT_TRUE(r.mismatches.empty());
}

TEST(FuzzDuels, SinglePoint)
{
  DuelGrid g{{Money{100}}, {Money{80}}, {Money{5}}, {Money{50}}};
  auto const r = fuzz_duels(g);
  EXPECT_EQ(r.points, 1u);
  EXPECT_TRUE(r.mismatches.empty());
}

TEST(FuzzDuels, SmallGridAndEqualSkip)
{
  auto const maxes = DuelGrid::range(Money{50}, Money{70}, Money{5});
  EXPECT_EQ(maxes.size(), 5u);
  DuelGrid   g{maxes, maxes, {Money{1}, Money{5}}, {Money{50}}};
  auto const r = fuzz_duels(g);
  EXPECT_EQ(r.points, 2u * 20u);
  EXPECT_TRUE(r.mismatches.empty());
  g.include_equal = true;
  EXPECT_EQ(fuzz_duels(g).points, 2u * 25u);
}

TEST(Scenario, TrivialWin)
{
  auto spec = one_auction();
  spec.actors.push_back({"ann", "A-1", LiveActor{{{Seconds{0}, Money{50}}}}});
  auto const t = run_scenario(spec);
  ASSERT_EQ(t.outcomes.size(), 1u);
  EXPECT_EQ(t.outcomes[0].winner->name, "ann");
  EXPECT_EQ(t.outcomes[0].winning_amount, Money{50});
  EXPECT_EQ(t.outcomes[0].closed_at, spec.epoch + Seconds{3600});
  EXPECT_TRUE(of_kind(t, "EXTENDED").empty());
}

TEST(Scenario, LateBidExtends)
{
  auto spec = one_auction();
  spec.actors.push_back({"ann", "A-1", LiveActor{{{Seconds{3570}, Money{50}}}}});
  auto const t   = run_scenario(spec);
  auto const ext = of_kind(t, "EXTENDED");
  ASSERT_EQ(ext.size(), 1u);
  EXPECT_EQ(ext[0].at, Seconds{3570});
  auto const closed = of_kind(t, "CLOSED");
  ASSERT_EQ(closed.size(), 1u);
  EXPECT_EQ(closed[0].at, Seconds{3660});
  EXPECT_EQ(t.outcomes[0].closed_at, spec.epoch + Seconds{3660});
}

TEST(Scenario, TwoLateBidsCloseTwoMinutesLate)
{
  auto spec = one_auction();
  spec.actors.push_back({"ann", "A-1", LiveActor{{{Seconds{3570}, Money{50}}}}});
  spec.actors.push_back({"ben", "A-1", LiveActor{{{Seconds{3630}, Money{55}}}}});
  auto const t = run_scenario(spec);
  EXPECT_EQ(of_kind(t, "CLOSED").at(0).at, Seconds{3720});
  EXPECT_EQ(t.outcomes[0].winner->name, "ben");
}

TEST(Scenario, DuelMatchesOracle)
{
  auto spec = one_auction();
  spec.actors.push_back({"A", "A-1", AutoActor{Money{100}, Seconds{0}, {}}});
  spec.actors.push_back({"B", "A-1", AutoActor{Money{80}, Seconds{0}, {}}});
  auto const t    = run_scenario(spec);
  auto const want = oracle_duel(Money{100}, Money{80}, Money{5}, Money{50});
  EXPECT_EQ(t.outcomes[0].winner->name, to_string(want.winner));
  EXPECT_EQ(t.outcomes[0].winning_amount, want.price);
}

TEST(Scenario, AtMaxPolicies)
{
  auto spec = one_auction();
  spec.actors.push_back({"owner", "A-1", AutoActor{Money{60}, Seconds{0}, {AtMaxPolicy::Kind::Raise, Money{200}}}});
  spec.actors.push_back({"rival", "A-1", LiveActor{{{Seconds{100}, Money{100}}}}});
  auto t = run_scenario(spec);
  EXPECT_EQ(of_kind(t, "AUTOBID_RAISED").size(), 1u);
  EXPECT_EQ(t.outcomes[0].winner->name, "owner");
  EXPECT_EQ(t.outcomes[0].winning_amount, Money{105});

  std::get<AutoActor>(spec.actors[0].kind).at_max = {AtMaxPolicy::Kind::Cancel, {}};
  t = run_scenario(spec);
  EXPECT_EQ(of_kind(t, "AUTOBID_CANCELLED").size(), 1u);
  EXPECT_EQ(t.outcomes[0].winner->name, "rival");
}

TEST(Scenario, TimesNonDecreasingAndAllClosed)
{
  auto const spec = parse_scenario(read_fixture("duel.json"));
  auto const t    = run_scenario(spec);
  for (std::size_t i = 1; i < t.entries.size(); ++i)
  {
    EXPECT_LE(t.entries[i - 1].at, t.entries[i].at);
  }
  EXPECT_EQ(t.outcomes.size(), spec.auctions.size());
}

TEST(Scenario, Deterministic)
{
  auto spec = parse_scenario(read_fixture("duel.json"));
  EXPECT_EQ(run_scenario(spec).render(), run_scenario(spec).render());
  auto other = spec;
  bool differs = false;
  for (std::uint64_t seed = 1; seed < 10 && !differs; ++seed)
  {
    other.seed = seed;
    differs    = run_scenario(other).render() != run_scenario(spec).render();
  }
  EXPECT_TRUE(differs);
}

TEST(Scenario, GoldenTranscript)
{
  auto const spec = parse_scenario(read_fixture("duel.json"));
  EXPECT_EQ(run_scenario(spec).render(), read_fixture("duel.golden"));
}

TEST(Scenario, RenderQuotesValues)
{
  auto spec                   = one_auction();
  spec.auctions[0].item_name = "a=b \"c\"";
  auto const text            = run_scenario(spec).render();
  EXPECT_NE(text.find(R"(item="a=b \"c\"")"), std::string::npos) << text;
}

TEST(Scenario, Invalid)
{
  auto spec = one_auction(Seconds{3000});
  EXPECT_THROW(run_scenario(spec), InvalidScenario);  // still open at the horizon

  spec = one_auction();
  spec.actors.push_back({"ann", "A-9", LiveActor{}});
  EXPECT_THROW(validate(spec), InvalidScenario);

  spec = one_auction();
  spec.actors.push_back({"ann", "A-1", LiveActor{{{Seconds{9000}, Money{50}}}}});
  EXPECT_THROW(validate(spec), InvalidScenario);

  spec = one_auction();
  spec.actors.push_back({"ann", "A-1", LiveActor{}});
  spec.actors.push_back({"ann", "A-1", LiveActor{}});
  EXPECT_THROW(validate(spec), InvalidScenario);

  spec = one_auction();
  spec.auctions.push_back(spec.auctions[0]);
  EXPECT_THROW(validate(spec), InvalidScenario);

  spec = one_auction();
  spec.actors.push_back({"ann", "A-1", AutoActor{Money{60}, Seconds{0}, {AtMaxPolicy::Kind::Raise, Money{50}}}});
  EXPECT_THROW(validate(spec), InvalidScenario);

  spec = one_auction();
  spec.actors.push_back({"ann", "A-1", RandomActor{1, Seconds{10}, Seconds{5}, 0}});
  EXPECT_THROW(validate(spec), InvalidScenario);

  spec.horizon = Seconds{0};
  EXPECT_THROW(validate(spec), InvalidScenario);
}

TEST(Scenario, ParseErrors)
{
  EXPECT_THROW(parse_scenario("{"), InvalidScenario);
  EXPECT_THROW(parse_scenario(R"({"horizon": 10, "auctions": [], "actors": [{"name": "a", "auction": "A-1"}]})"),
               InvalidScenario);
  EXPECT_THROW(parse_scenario(R"({"horizon": "x", "auctions": [], "actors": []})"), InvalidScenario);
  auto const ok = parse_scenario(R"({"horizon": 10, "auctions": [], "actors": []})");
  EXPECT_EQ(ok.epoch, default_epoch());
}

}  // namespace
