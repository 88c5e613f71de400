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

#include <fstream>
#include <map>
#include <thread>

#include "agora/gateway/gateway.hpp"
#include "gateway_support.hpp"
#include "test_support.hpp"

namespace {

using namespace agora;
using namespace agora::gateway;
using agora::testing::at;
using agora::testing::fixture;
using agora::testing::read_fixture;
using agora::testing::TempDir;

EnvLookup env_of(std::map<std::string, std::string> vars)
{
  return [vars = std::move(vars)](std::string const &name) -> std::optional<std::string> {
    auto const it = vars.find(name);
    if (it == vars.end())
    {
      return std::nullopt;
    }
    return it->second;
  };
}

TEST(Config, Defaults)
{
  auto const c = load_config(std::nullopt, env_of({}));
  EXPECT_EQ(c.port, 8080);
  EXPECT_EQ(c.lookback_days, 90);
  EXPECT_EQ(c.min_history, 3);
  EXPECT_EQ(c.period_days, 365);
}

TEST(Config, FileThenEnv)
{
  TempDir dir;
  auto    file = dir.path() / "agora.conf";
  std::ofstream(file) << "# comment\nport = 9000\n\nmin_history=5\ndata_dir = /tmp/x\n";
  auto const c = load_config(file, env_of({{"AGORA_PORT", "9100"}, {"AGORA_SEED", "7"}}));
  EXPECT_EQ(c.port, 9100);
  EXPECT_EQ(c.min_history, 5);
  EXPECT_EQ(c.seed, 7);
  EXPECT_EQ(c.data_dir, "/tmp/x");
}

TEST(Config, Errors)
{
  Config c;
  EXPECT_THROW(set_value(c, "colour", "red"), ConfigError);
  EXPECT_THROW(set_value(c, "port", "abc"), ConfigError);
  EXPECT_THROW(apply_text(c, "port"), ConfigError);
  EXPECT_THROW(load_config(std::nullopt, env_of({{"AGORA_MIN_HISTORY", "0"}})), ConfigError);
  EXPECT_THROW(load_config(std::nullopt, env_of({{"AGORA_PORT", "70000"}})), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/agora.conf", env_of({})), ConfigError);
}

TEST(Events, RoundTripAndFieldOrder)
{
  Event ev{12, at("2026-10-01T09:00:00Z"), EventKind::BidRejected, "A-1",
           Json{{"bidder", "bob"}, {"required_minimum", 7277}}};
  auto const line = encode(ev);
  EXPECT_EQ(line, R"({"seq":12,"time":"2026-10-01T09:00:00Z","kind":"BID_REJECTED","auction":"A-1",)"
                  R"("payload":{"bidder":"bob","required_minimum":7277}})");
  EXPECT_EQ(decode(line), ev);
  for (int k = 0; k <= static_cast<int>(EventKind::RecordsLoaded); ++k)
  {
    auto const kind = static_cast<EventKind>(k);
    EXPECT_EQ(parse_event_kind(to_string(kind)), kind);
  }
}

TEST(Events, DecodeRejects)
{
  EXPECT_THROW(decode("not json"), BadEvent);
  EXPECT_THROW(decode(R"({"time":"2026-10-01T09:00:00Z","seq":1,"kind":"CLOSED","auction":"","payload":{}})"),
               BadEvent);
  EXPECT_THROW(decode(R"({"seq":1,"time":"yesterday","kind":"CLOSED","auction":"","payload":{}})"), BadEvent);
  EXPECT_THROW(decode(R"({"seq":1,"time":"2026-10-01T09:00:00Z","kind":"NAP","auction":"","payload":{}})"),
               BadEvent);
}

TEST(EventLogTest, AppendAndReopen)
{
  TempDir    dir;
  auto const file = dir.path() / "events.log";
  {
    EventLog log(file);
    for (int i = 0; i < 3; ++i)
    {
      log.append(EventKind::AdviceServed, at("2026-10-01T09:00:00Z"), "", Json{{"i", i}});
    }
  }
  EventLog again(file);
  auto const events = again.events();
  ASSERT_EQ(events.size(), 3u);
  EXPECT_EQ(events[2].sequence, 3u);
  EXPECT_EQ(events[2].payload["i"], 2);
  EXPECT_EQ(again.since(1).size(), 2u);
  EXPECT_EQ(again.append(EventKind::AdviceServed, at("2026-10-01T09:00:00Z"), "", {}).sequence, 4u);
}

TEST(EventLogTest, TruncatedFixture)
{
  TempDir    dir;
  auto const file = dir.path() / "events.log";
  std::filesystem::copy_file(fixture("truncated.log"), file);
  auto const contents = read_log(file);
  EXPECT_EQ(contents.events.size(), 3u);
  EXPECT_EQ(contents.truncated, 1u);

  EventLog log(file);
  EXPECT_EQ(log.truncated_on_open(), 1u);
  EXPECT_EQ(log.last_sequence(), 3u);
  log.append(EventKind::Closed, at("2026-10-01T10:00:00Z"), "A-1", {});
  auto const clean = read_log(file);
  EXPECT_EQ(clean.truncated, 0u);
  EXPECT_EQ(clean.events.size(), 4u);
}

TEST(EventLogTest, CorruptMiddleLineNamesSequence)
{
  TempDir    dir;
  auto const file = dir.path() / "events.log";
  auto       text = read_fixture("truncated.log");
  auto const nl   = text.find('\n');
  text.insert(nl + 1, "garbage\n");
  std::ofstream(file) << text;
  try
  {
    EventLog log(file);
    FAIL();
  }
  catch (CorruptLog const &ex)
  {
    EXPECT_EQ(ex.sequence(), 2u);
  }
}

TEST(EventLogTest, WaitBeyond)
{
  EventLog    log;
  std::thread writer([&] {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    log.append(EventKind::AdviceServed, at("2026-10-01T09:00:00Z"), "", {});
  });
  EXPECT_TRUE(log.wait_beyond(0, std::chrono::seconds(5)));
  writer.join();
  EXPECT_FALSE(log.wait_beyond(1, std::chrono::milliseconds(10)));
}

struct GatewayFixture : ::testing::Test
{
  Timestamp now = at("2026-10-01T09:00:00Z");
  Gateway   g{Gateway::InMemory{}, Config{}, [this] { return now; }};
  std::string seller = g.start_session("sam");
  std::string alice  = g.start_session("alice");
  std::string bob    = g.start_session("bob");

  std::string open(std::int64_t start = 7252, std::int64_t inc = 25)
  {
    OpenAuctionRequest req{"Sony Digital Camera C-3020", "digital-camera", Money{start}, Money{inc},
                           Seconds{3600}, std::nullopt};
    return g.open_auction(seller, req)["id"].get<std::string>();
  }

  std::vector<Event> kinds_after(std::uint64_t after, EventKind kind) const
  {
    std::vector<Event> out;
    for (auto const &e : g.events_since(after))
    {
      if (e.kind == kind)
      {
        out.push_back(e);
      }
    }
    return out;
  }
};

TEST_F(GatewayFixture, Sessions)
{
  EXPECT_EQ(g.authenticate(alice).name, "alice");
  EXPECT_THROW(g.authenticate("nope"), Unauthorized);
  EXPECT_THROW(g.start_session(""), BadRequest);
  EXPECT_THROW(g.place_bid("nope", "A-1", Money{1}), Unauthorized);
}

TEST_F(GatewayFixture, ValidRaise)
{
  auto const id  = open();
  auto const seq = g.last_sequence();
  auto const r   = g.place_bid(alice, id, Money{7252});
  EXPECT_EQ(r["auction"]["current_bid"], 7252);
  auto const accepted = kinds_after(seq, EventKind::BidAccepted);
  ASSERT_EQ(accepted.size(), 1u);
  EXPECT_EQ(accepted[0].payload["amount"], 7252);
  EXPECT_EQ(accepted[0].auction_id, id);
}

TEST_F(GatewayFixture, LowBidRejectedWithMinimum)
{
  auto const id = open();
  g.place_bid(alice, id, Money{7252});
  auto const seq = g.last_sequence();
  EXPECT_THROW(g.place_bid(bob, id, Money{7260}), auction::BidTooLow);
  auto const rejected = kinds_after(seq, EventKind::BidRejected);
  ASSERT_EQ(rejected.size(), 1u);
  EXPECT_EQ(rejected[0].payload["required_minimum"], 7277);
}

TEST_F(GatewayFixture, UnknownAuction)
{
  EXPECT_THROW(g.place_bid(alice, "A-42", Money{1}), market::UnknownAuction);
  EXPECT_THROW(g.auction_detail("A-42"), market::UnknownAuction);
}

TEST_F(GatewayFixture, CounterRebidFollowsLiveRaise)
{
  auto const id = open(50, 5);
  auto const ab = g.create_autobid(alice, id, Money{100});
  EXPECT_EQ(ab["status"], "ACTIVE");
  auto const seq = g.last_sequence();
  g.place_bid(bob, id, Money{70});
  auto const events = g.events_since(seq);
  ASSERT_GE(events.size(), 2u);
  EXPECT_EQ(events[0].kind, EventKind::BidAccepted);
  EXPECT_EQ(events[0].payload["bidder"], "bob");
  EXPECT_EQ(events[1].kind, EventKind::BidAccepted);
  EXPECT_EQ(events[1].payload["bidder"], "alice");
  EXPECT_EQ(events[1].payload["amount"], 75);
  EXPECT_EQ(events[1].payload["origin"], "AUTO");
}

TEST_F(GatewayFixture, AutobidLifecycleOnStream)
{
  auto const id = open(50, 5);
  g.place_bid(bob, id, Money{80});
  auto const ab   = g.create_autobid(alice, id, Money{100});
  auto const abid = ab["id"].get<std::string>();
  EXPECT_EQ(g.auction_detail(id)["current_bid"], 85);
  EXPECT_THROW(g.cancel_autobid(bob, abid), Forbidden);
  g.place_bid(bob, id, Money{97});
  EXPECT_EQ(kinds_after(0, EventKind::AutobidAtMax).size(), 1u);
  g.raise_max(alice, abid, Money{110});
  EXPECT_EQ(kinds_after(0, EventKind::AutobidRaised).size(), 1u);
  EXPECT_EQ(g.auction_detail(id)["current_bid"], 102);
  g.cancel_autobid(alice, abid);
  EXPECT_EQ(kinds_after(0, EventKind::AutobidCancelled).size(), 1u);
  EXPECT_EQ(g.list_autobids().at(0)["status"], "CANCELLED");
}

TEST_F(GatewayFixture, ExtensionAndCloseReachStream)
{
  auto const id = open();
  now += Seconds{3570};
  auto const r = g.place_bid(alice, id, Money{7252});
  EXPECT_TRUE(r["extended"].get<bool>());
  EXPECT_EQ(kinds_after(0, EventKind::Extended).size(), 1u);
  now += Seconds{89};
  g.tick();
  EXPECT_TRUE(kinds_after(0, EventKind::Closed).empty());
  now += Seconds{1};
  g.tick();
  auto const closed = kinds_after(0, EventKind::Closed);
  ASSERT_EQ(closed.size(), 1u);
  EXPECT_EQ(closed[0].payload["winner"], "alice");
  EXPECT_EQ(closed[0].time, at("2026-10-01T10:01:00Z"));
  // Closed sales feed the warehouse.
  auto const stats = g.stats_report(warehouse::RecordSelector::item("Sony Digital Camera C-3020"));
  EXPECT_EQ(stats["median"], 7252);
  EXPECT_EQ(g.warehouse().snapshot()->front().site, kLocalSite);
}

TEST_F(GatewayFixture, AdviceFromRichHistory)
{
  g.import_feed(read_fixture("table1.xml"));
  now = at("2026-09-20T00:00:00Z");
  std::vector<std::int64_t> prices;
  for (auto const &rec : *g.warehouse().snapshot())
  {
    if (rec.item_name == "Sony Digital Camera C-3020")
    {
      prices.push_back(rec.closed_price.minor());
    }
  }
  auto const resp = g.get_advice(advisor::AdviceRequest{"Sony Digital Camera C-3020", Money{7252}, 2, Seconds{600}});
  std::sort(prices.begin(), prices.end());
  // Fewer than three exact matches fall back to the category.
  std::vector<std::int64_t> all;
  for (auto const &rec : *g.warehouse().snapshot())
  {
    all.push_back(rec.closed_price.minor());
  }
  std::sort(all.begin(), all.end());
  auto const &pool = prices.size() >= 3 ? prices : all;
  auto const  n    = pool.size();
  auto const  want = n % 2 ? pool[n / 2] : (pool[n / 2 - 1] + pool[n / 2]) / 2;
  EXPECT_EQ(resp.recommended_bid.minor(), want);
  EXPECT_EQ(resp.recommended_bid_time, now + Seconds{300});
  EXPECT_EQ(kinds_after(0, EventKind::AdviceServed).size(), 1u);
}

TEST_F(GatewayFixture, AdviceForLiveAuction)
{
  g.import_feed(read_fixture("table1.xml"));
  now        = at("2026-09-20T00:00:00Z");
  auto const id = open();
  g.place_bid(alice, id, Money{7252});
  auto const resp = g.get_advice(id);
  EXPECT_EQ(resp.recommended_bid_time, now + Seconds{3600 - 300});
  auto const served = kinds_after(0, EventKind::AdviceServed);
  ASSERT_EQ(served.size(), 1u);
  EXPECT_EQ(served[0].auction_id, id);
}

TEST_F(GatewayFixture, AdviceRefusedOnEmptyWarehouse)
{
  try
  {
    g.get_advice(advisor::AdviceRequest{"cam", Money{1}, 0, Seconds{0}});
    FAIL();
  }
  catch (AdvisorRefused const &ex)
  {
    EXPECT_EQ(ex.sample_size(), 0u);
  }
}

TEST_F(GatewayFixture, NoAdvisorWhenDeregistered)
{
  g.platform().ams_deregister(g.advisor_id());
  EXPECT_THROW(g.get_advice(advisor::AdviceRequest{"cam", Money{1}, 0, Seconds{0}}), NoAdvisor);
}

TEST_F(GatewayFixture, Reports)
{
  g.import_feed(read_fixture("table1.xml"));
  auto const s = g.stats_report(warehouse::RecordSelector::category("digital-camera"));
  EXPECT_EQ(s["min"], 6323);
  EXPECT_EQ(s["max"], 9360);
  EXPECT_EQ(s["sample_size"], 7);
  EXPECT_THROW(g.stats_report(warehouse::RecordSelector::item("nothing")), warehouse::NoData);
  now = at("2027-06-01T00:00:00Z");
  EXPECT_THROW(g.prediction_report(warehouse::RecordSelector::category("digital-camera"), 3),
               warehouse::InsufficientHistory);
}

TEST_F(GatewayFixture, ConcurrentBidsSerialize)
{
  auto const id = open(1, 1);
  std::vector<std::string> tokens;
  for (int i = 0; i < 4; ++i)
  {
    tokens.push_back(g.start_session("p" + std::to_string(i)));
  }
  std::vector<std::thread> threads;
  for (auto const &t : tokens)
  {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 40; ++i)
      {
        try
        {
          auto const min = g.auction_detail(id)["required_minimum"].get<std::int64_t>();
          g.place_bid(t, id, Money{min});
        }
        catch (auction::BidRejected const &)
        {
        }
      }
    });
  }
  for (auto &th : threads)
  {
    th.join();
  }
  auto const bids = g.auction_detail(id)["bids"];
  for (std::size_t i = 1; i < bids.size(); ++i)
  {
    EXPECT_GT(bids[i]["amount"].get<std::int64_t>(), bids[i - 1]["amount"].get<std::int64_t>());
  }
  auto const events = g.events_since(0);
  for (std::size_t i = 0; i < events.size(); ++i)
  {
    EXPECT_EQ(events[i].sequence, i + 1);
  }
}

TEST(Replay, EmptyDirIsFresh)
{
  TempDir dir;
  Config  c;
  c.data_dir = dir.path() / "data";
  Gateway g(c, [] { return at("2026-10-01T09:00:00Z"); });
  EXPECT_EQ(g.last_sequence(), 0u);
  EXPECT_TRUE(g.list_auctions().empty());
}

TEST(Replay, RandomSequencesReproduceState)
{
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
  {
    TempDir   dir;
    Config    c;
    c.data_dir = dir.path();
    Timestamp now = at("2026-10-01T09:00:00Z");
    Json      before;
    {
      Gateway g(c, [&] { return now; });
      agora::testing::drive_random(g, now, seed, 150);
      before = agora::testing::observable_state(g);
      EXPECT_GT(g.last_sequence(), 50u);
      EXPECT_FALSE(before["autobids"].empty());
    }
    Gateway again(c, [&] { return now; });
    EXPECT_EQ(agora::testing::observable_state(again), before) << "seed " << seed;
  }
}

TEST(Replay, TruncatedFixtureRecovers)
{
  TempDir dir;
  Config  c;
  c.data_dir = dir.path();
  std::filesystem::copy_file(fixture("truncated.log"), Gateway::log_path(c));
  Gateway g(c, [] { return at("2026-10-01T09:40:00Z"); });
  EXPECT_EQ(g.truncated_on_open(), 1u);
  auto const a = g.auction_detail("A-1");
  EXPECT_EQ(a["current_bid"], 7330);
  EXPECT_EQ(a["num_bids"], 2);
  EXPECT_EQ(a["leader"], "bob");
}

}  // namespace
