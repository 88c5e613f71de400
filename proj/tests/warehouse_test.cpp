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

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

#include "agora/warehouse/median.hpp"
#include "agora/warehouse/warehouse.hpp"
#include "test_support.hpp"

namespace {

using namespace agora;
using namespace agora::warehouse;
using agora::testing::at;

// Sort, take the middle; even sizes average the two middles and floor.
std::int64_t sorted_median(std::vector<std::int64_t> v)
{
  std::sort(v.begin(), v.end());
  auto const n = v.size();
  if (n % 2 == 1)
  {
    return v[n / 2];
  }
  return (v[n / 2 - 1] + v[n / 2]) / 2;
}

ClosedAuctionRecord record(std::string name, std::int64_t price, std::string const &close,
                           std::string site = "EBay")
{
  ClosedAuctionRecord r;
  r.site         = std::move(site);
  r.item_name    = std::move(name);
  r.category     = "digital-camera";
  r.closed_price = Money{price};
  r.num_bids     = 3;
  r.close_time   = at(close);
  return r;
}

struct ZeroRng
{
  double next()
  {
    return 0.0;
  }
  std::uint64_t seed() const
  {
    return 0;
  }
};

TEST(Median, MatchesSortOracle)
{
  std::mt19937_64 gen(7);
  for (int i = 0; i < 200; ++i)
  {
    std::vector<std::int64_t> v(1 + gen() % 40);
    for (auto &x : v)
    {
      x = static_cast<std::int64_t>(gen() % 1000);
    }
    EXPECT_EQ(median_floor(v), sorted_median(v));
  }
  EXPECT_EQ(twice_median({4, 5, 9}), 10);
  EXPECT_EQ(twice_median({4, 5}), 9);
  EXPECT_THROW(twice_median({}), std::invalid_argument);
}

TEST(Rng, KnownSequence)
{
  SeededRng rng(42);
  EXPECT_DOUBLE_EQ(rng.next(), 0.5682303266439076);
  EXPECT_DOUBLE_EQ(rng.next(), 0.2254634289477513);
  EXPECT_DOUBLE_EQ(rng.next(), 0.41283831882951183);
}

TEST(Rng, SameSeedSameSequence)
{
  SeededRng a(9);
  SeededRng b(9);
  for (int i = 0; i < 1000; ++i)
  {
    double const x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
}

TEST(Warehouse, AddTableOneRow)
{
  Warehouse w;
  EXPECT_TRUE(w.add_record(record("Sony Digital Camera C-3020", 7330, "2026-09-01T10:00:00Z")));
  EXPECT_EQ(w.size(), 1u);
  EXPECT_EQ(w.snapshot()->front().closed_price, Money{7330});
}

TEST(Warehouse, DuplicateKeyIgnored)
{
  Warehouse w;
  auto const r = record("x", 10, "2026-09-01T10:00:00Z");
  EXPECT_TRUE(w.add_record(r));
  auto other         = r;
  other.closed_price = Money{99};
  EXPECT_FALSE(w.add_record(other));
  EXPECT_EQ(w.size(), 1u);
  EXPECT_EQ(w.duplicates(), 1u);
  // Another site is another key.
  EXPECT_TRUE(w.add_record(record("x", 10, "2026-09-01T10:00:00Z", "yahoo")));
}

TEST(Warehouse, InvalidRecords)
{
  Warehouse w;
  auto r     = record("x", 10, "2026-09-01T10:00:00Z");
  r.quantity = 0;
  EXPECT_THROW(w.add_record(r), InvalidRecord);
  r.quantity = 1;
  r.num_bids = -1;
  EXPECT_THROW(w.add_record(r), InvalidRecord);
  r.num_bids  = 0;
  r.item_name = "";
  EXPECT_THROW(w.add_record(r), InvalidRecord);
  EXPECT_EQ(w.size(), 0u);
}

TEST(Warehouse, BatchReportsEachOutcome)
{
  Warehouse                        w;
  std::vector<ClosedAuctionRecord> batch{record("a", 1, "2026-09-01T10:00:00Z"),
                                         record("a", 1, "2026-09-01T10:00:00Z"),
                                         record("b", 1, "2026-09-01T10:00:00Z")};
  batch[2].quantity = 0;
  auto const out    = w.add_records(batch);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].kind, Warehouse::InsertOutcome::Kind::Added);
  EXPECT_EQ(out[1].kind, Warehouse::InsertOutcome::Kind::Duplicate);
  EXPECT_EQ(out[2].kind, Warehouse::InsertOutcome::Kind::Invalid);
  EXPECT_EQ(w.size(), 1u);
}

TEST(Stats, TableOneSubset)
{
  Warehouse w;
  int       day = 1;
  for (std::int64_t p : {6323, 7315, 7330, 8397})
  {
    w.add_record(record("cam", p, "2026-09-0" + std::to_string(day++) + "T10:00:00Z"));
  }
  auto const s = w.stats_report(RecordSelector::item("cam"));
  EXPECT_EQ(s.min, Money{6323});
  EXPECT_EQ(s.median, Money{7322});
  EXPECT_EQ(s.max, Money{8397});
  EXPECT_EQ(s.quantity_sold, 4);
  EXPECT_EQ(s.sample_size, 4u);
}

TEST(Stats, SingleRecord)
{
  Warehouse w;
  w.add_record(record("cam", 500, "2026-09-01T10:00:00Z"));
  auto const s = w.stats_report(RecordSelector::item("cam"));
  EXPECT_EQ(s.min, Money{500});
  EXPECT_EQ(s.median, Money{500});
  EXPECT_EQ(s.max, Money{500});
}

TEST(Stats, NoData)
{
  Warehouse w;
  EXPECT_THROW(w.stats_report(RecordSelector::item("cam")), NoData);
}

TEST(Stats, RandomMatchesBruteForce)
{
  std::mt19937_64 gen(3);
  for (int round = 0; round < 20; ++round)
  {
    Warehouse                 w;
    std::vector<std::int64_t> prices;
    std::int64_t              qty = 0;
    for (int i = 0; i < 100; ++i)
    {
      auto r = record(gen() % 2 ? "cam" : "other", static_cast<std::int64_t>(gen() % 10000),
                      "2026-09-01T10:00:00Z");
      r.close_time += Seconds{i};
      r.quantity = 1 + static_cast<std::int64_t>(gen() % 3);
      w.add_record(r);
      if (r.item_name == "cam")
      {
        prices.push_back(r.closed_price.minor());
        qty += r.quantity;
      }
    }
    if (prices.empty())
    {
      continue;
    }
    auto const s = w.stats_report(RecordSelector::item("cam"));
    EXPECT_EQ(s.min.minor(), *std::min_element(prices.begin(), prices.end()));
    EXPECT_EQ(s.max.minor(), *std::max_element(prices.begin(), prices.end()));
    EXPECT_EQ(s.median.minor(), sorted_median(prices));
    EXPECT_EQ(s.quantity_sold, qty);
    EXPECT_LE(s.min, s.median);
    EXPECT_LE(s.median, s.max);
  }
}

TEST(Stats, InsertionOrderIrrelevant)
{
  std::vector<ClosedAuctionRecord> rs;
  for (int i = 0; i < 30; ++i)
  {
    auto r = record("cam", (i * 7919) % 1000, "2026-09-01T10:00:00Z");
    r.close_time += Seconds{i};
    rs.push_back(r);
  }
  Warehouse a;
  Warehouse b;
  a.add_records(rs);
  std::reverse(rs.begin(), rs.end());
  b.add_records(rs);
  EXPECT_EQ(a.stats_report(RecordSelector::item("cam")), b.stats_report(RecordSelector::item("cam")));
}

TEST(Periods, OnePerWindow)
{
  Warehouse w;
  w.add_record(record("cam", 100, "2026-08-10T00:00:00Z"));
  w.add_record(record("cam", 110, "2026-09-10T00:00:00Z"));
  auto const m = w.aggregate_periods(RecordSelector::item("cam"), Seconds{30 * 86400},
                                     at("2026-10-01T00:00:00Z"));
  EXPECT_EQ(m.past, Money{100});
  EXPECT_EQ(m.present, Money{110});
}

TEST(Periods, WindowBoundsHalfOpen)
{
  Warehouse  w;
  auto const now = at("2026-10-01T00:00:00Z");
  auto const L   = Seconds{86400};
  auto       r   = record("cam", 1, "2026-10-01T00:00:00Z");
  w.add_record(r);  // at now: outside both windows
  r.close_time   = now - L;
  r.closed_price = Money{7};
  w.add_record(r);  // start of present
  r.close_time   = now - 2 * L;
  r.closed_price = Money{3};
  w.add_record(r);  // start of past
  auto const m = w.aggregate_periods(RecordSelector::item("cam"), L, now);
  EXPECT_EQ(m.past, Money{3});
  EXPECT_EQ(m.present, Money{7});
}

TEST(Periods, EmptyWindowsNamed)
{
  Warehouse w;
  w.add_record(record("cam", 110, "2026-09-10T00:00:00Z"));
  try
  {
    w.aggregate_periods(RecordSelector::item("cam"), Seconds{30 * 86400}, at("2026-10-01T00:00:00Z"));
    FAIL();
  }
  catch (InsufficientHistory const &ex)
  {
    EXPECT_EQ(ex.window(), "past");
  }
  Warehouse v;
  v.add_record(record("cam", 100, "2026-08-10T00:00:00Z"));
  try
  {
    v.aggregate_periods(RecordSelector::item("cam"), Seconds{30 * 86400}, at("2026-10-01T00:00:00Z"));
    FAIL();
  }
  catch (InsufficientHistory const &ex)
  {
    EXPECT_EQ(ex.window(), "present");
  }
}

TEST(Periods, MultiRecordWindowsMatchOracle)
{
  std::mt19937_64           gen(11);
  Warehouse                 w;
  auto const                now = at("2026-10-01T00:00:00Z");
  std::vector<std::int64_t> past;
  std::vector<std::int64_t> present;
  for (int i = 0; i < 60; ++i)
  {
    auto const   offset = static_cast<std::int64_t>(gen() % (60 * 86400)) + 1;
    std::int64_t price  = static_cast<std::int64_t>(gen() % 5000);
    auto         r      = record("cam", price, "2026-10-01T00:00:00Z");
    r.close_time        = now - Seconds{offset};
    if (!w.add_record(r))
    {
      continue;
    }
    (offset > 30 * 86400 ? past : present).push_back(price);
  }
  auto const m = w.aggregate_periods(RecordSelector::item("cam"), Seconds{30 * 86400}, now);
  EXPECT_EQ(m.past.minor(), sorted_median(past));
  EXPECT_EQ(m.present.minor(), sorted_median(present));
}

TEST(Predict, ZeroStub)
{
  ZeroRng    rng;
  auto const p = predict(Money{100}, Money{110}, rng);
  EXPECT_EQ(p.variant1, Money{110});
  EXPECT_EQ(p.variant2, 105.0);
  EXPECT_EQ(p.future, Money{215});
}

TEST(Predict, PastZero)
{
  for (std::uint64_t seed = 0; seed < 50; ++seed)
  {
    SeededRng  rng(seed);
    auto const p = predict(Money{0}, Money{78}, rng);
    EXPECT_EQ(p.variant1, Money{78});
    EXPECT_EQ(p.future, Money{39 + 78});
    // Odd present: r2 may lift the half.
    SeededRng  odd(seed);
    auto const q = predict(Money{0}, Money{77}, odd);
    EXPECT_EQ(q.variant1, Money{77});
    EXPECT_GE(q.future, Money{38 + 77});
    EXPECT_LE(q.future, Money{39 + 77});
  }
}

TEST(Predict, FormulasWithKnownDraws)
{
  SeededRng  rng(42);
  auto const p = predict(Money{1000}, Money{501}, rng);
  // r1 = 0.568..., r2 = 0.225...
  EXPECT_EQ(p.variant1, Money{568 + 501});
  EXPECT_EQ(p.variant2, 750.5);
  EXPECT_EQ(p.future, Money{750 + 568 + 501});
  EXPECT_EQ(p.seed, 42u);
}

TEST(Predict, SameSeedIdentical)
{
  SeededRng a(5);
  SeededRng b(5);
  EXPECT_EQ(predict(Money{321}, Money{654}, a), predict(Money{321}, Money{654}, b));
}

TEST(Predict, Bounds)
{
  std::mt19937_64 gen(1);
  for (int i = 0; i < 1000; ++i)
  {
    Money const past{static_cast<std::int64_t>(gen() % 100000)};
    Money const present{static_cast<std::int64_t>(gen() % 100000)};
    SeededRng   rng(gen());
    auto const  p = predict(past, present, rng);
    EXPECT_LE(present, p.variant1);
    EXPECT_LE(p.variant1, past + present);
    auto const base = p.variant1.minor() + (past.minor() + present.minor()) / 2;
    EXPECT_GE(p.future.minor(), base);
    EXPECT_LE(p.future.minor(), base + 1);
  }
}

TEST(Prediction, FromWarehouse)
{
  Warehouse w;
  w.add_record(record("cam", 100, "2026-08-10T00:00:00Z"));
  w.add_record(record("cam", 110, "2026-09-10T00:00:00Z"));
  auto const now = at("2026-10-01T00:00:00Z");
  auto const p   = w.market_prediction(RecordSelector::item("cam"), Seconds{30 * 86400}, now, 42);
  SeededRng  rng(42);
  EXPECT_EQ(p, [&] {
    auto q      = predict(Money{100}, Money{110}, rng);
    q.item_name = "cam";
    return q;
  }());
}

TEST(Warehouse, ReadersSeeConsistentSnapshots)
{
  Warehouse                w;
  std::atomic<bool>        done{false};
  std::thread              reader([&] {
    while (!done)
    {
      auto const snap = w.snapshot();
      for (std::size_t i = 1; i < snap->size(); ++i)
      {
        ASSERT_NE((*snap)[i].close_time, (*snap)[i - 1].close_time);
      }
    }
  });
  for (int i = 0; i < 500; ++i)
  {
    auto r = record("cam", i, "2026-09-01T00:00:00Z");
    r.close_time += Seconds{i};
    w.add_record(r);
  }
  done = true;
  reader.join();
  EXPECT_EQ(w.size(), 500u);
}

}  // namespace
