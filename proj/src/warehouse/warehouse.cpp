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

#include "agora/warehouse/warehouse.hpp"

#include <algorithm>

#include "agora/warehouse/median.hpp"

namespace agora::warehouse {

void validate(ClosedAuctionRecord const &rec)
{
  if (rec.site.empty())
  {
    throw InvalidRecord("site must be non-empty");
  }
  if (rec.item_name.empty())
  {
    throw InvalidRecord("item name must be non-empty");
  }
  if (rec.num_bids < 0)
  {
    throw InvalidRecord("num_bids must be non-negative");
  }
  if (rec.quantity < 1)
  {
    throw InvalidRecord("quantity must be at least 1, got " + std::to_string(rec.quantity));
  }
}

StatsReport stats_report(Snapshot const &records, RecordSelector const &selector)
{
  std::vector<std::int64_t> prices;
  std::int64_t              quantity = 0;
  for (auto const &rec : *records)
  {
    if (selector.matches(rec))
    {
      prices.push_back(rec.closed_price.minor());
      quantity += rec.quantity;
    }
  }
  if (prices.empty())
  {
    throw NoData("no records for " + selector.value);
  }

  auto const [lo, hi] = std::minmax_element(prices.begin(), prices.end());
  StatsReport report;
  report.item_name     = selector.value;
  report.min           = Money{*lo};
  report.max           = Money{*hi};
  report.quantity_sold = quantity;
  report.sample_size   = prices.size();
  report.median        = Money{median_floor(std::move(prices))};
  return report;
}

PeriodMedians aggregate_periods(Snapshot const &records, RecordSelector const &selector,
                                Seconds period_length, Timestamp now)
{
  Timestamp const present_start = now - period_length;
  Timestamp const past_start    = now - 2 * period_length;

  std::vector<std::int64_t> past;
  std::vector<std::int64_t> present;
  for (auto const &rec : *records)
  {
    if (!selector.matches(rec))
    {
      continue;
    }
    if (rec.close_time >= past_start && rec.close_time < present_start)
    {
      past.push_back(rec.closed_price.minor());
    }
    else if (rec.close_time >= present_start && rec.close_time < now)
    {
      present.push_back(rec.closed_price.minor());
    }
  }
  if (past.empty())
  {
    throw InsufficientHistory("past", 0);
  }
  if (present.empty())
  {
    throw InsufficientHistory("present", 0);
  }
  return {Money{median_floor(std::move(past))}, Money{median_floor(std::move(present))}};
}

Warehouse::Warehouse()
  : records_(std::make_shared<std::vector<ClosedAuctionRecord> const>())
{}

bool Warehouse::add_record(ClosedAuctionRecord const &rec)
{
  validate(rec);
  auto const outcome = add_records(std::span(&rec, 1));
  return outcome.front().kind == InsertOutcome::Kind::Added;
}

std::vector<Warehouse::InsertOutcome> Warehouse::add_records(
    std::span<ClosedAuctionRecord const> records)
{
  std::vector<InsertOutcome> outcomes;
  outcomes.reserve(records.size());

  std::lock_guard lock(mutex_);
  auto            next = std::make_shared<std::vector<ClosedAuctionRecord>>(*records_);
  for (auto const &rec : records)
  {
    try
    {
      validate(rec);
    }
    catch (InvalidRecord const &ex)
    {
      outcomes.push_back({InsertOutcome::Kind::Invalid, ex.what()});
      continue;
    }
    Key key{rec.site, rec.item_name, to_unix_seconds(rec.close_time)};
    if (!keys_.insert(std::move(key)).second)
    {
      ++duplicates_;
      outcomes.push_back({InsertOutcome::Kind::Duplicate, {}});
      continue;
    }
    next->push_back(rec);
    outcomes.push_back({InsertOutcome::Kind::Added, {}});
  }
  records_ = std::move(next);
  return outcomes;
}

Snapshot Warehouse::snapshot() const
{
  std::lock_guard lock(mutex_);
  return records_;
}

std::size_t Warehouse::size() const
{
  return snapshot()->size();
}

std::size_t Warehouse::duplicates() const
{
  std::lock_guard lock(mutex_);
  return duplicates_;
}

StatsReport Warehouse::stats_report(RecordSelector const &selector) const
{
  return warehouse::stats_report(snapshot(), selector);
}

PeriodMedians Warehouse::aggregate_periods(RecordSelector const &selector, Seconds period_length,
                                           Timestamp now) const
{
  return warehouse::aggregate_periods(snapshot(), selector, period_length, now);
}

MarketPrediction Warehouse::market_prediction(RecordSelector const &selector,
                                              Seconds period_length, Timestamp now,
                                              std::uint64_t seed) const
{
  auto const medians = aggregate_periods(selector, period_length, now);
  SeededRng  rng(seed);
  auto       prediction = predict(medians.past, medians.present, rng);
  prediction.item_name  = selector.value;
  return prediction;
}

}  // namespace agora::warehouse
