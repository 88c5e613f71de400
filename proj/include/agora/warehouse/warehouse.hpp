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
#include <memory>
#include <mutex>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "agora/core/error.hpp"
#include "agora/warehouse/prediction.hpp"
#include "agora/warehouse/record.hpp"

namespace agora::warehouse {

class WarehouseError : public Error
{
public:
  using Error::Error;
};

class InvalidRecord : public WarehouseError
{
public:
  using WarehouseError::WarehouseError;
};

class NoData : public WarehouseError
{
public:
  using WarehouseError::WarehouseError;
};

/// Not enough matching history; `window` names which part was short ("past", "present",
/// or the item for whole-sample requests).
class InsufficientHistory : public WarehouseError
{
public:
  InsufficientHistory(std::string window, std::size_t sample_size)
    : WarehouseError("insufficient history (" + window + "): " + std::to_string(sample_size) +
                     " matching records")
    , window_(std::move(window))
    , sample_size_(sample_size)
  {}

  std::string const &window() const noexcept
  {
    return window_;
  }
  std::size_t sample_size() const noexcept
  {
    return sample_size_;
  }

private:
  std::string window_;
  std::size_t sample_size_;
};

/// Which records a report is about.
struct RecordSelector
{
  enum class Field
  {
    ItemName,
    Category,
  };

  Field       field = Field::ItemName;
  std::string value;

  static RecordSelector item(std::string name)
  {
    return {Field::ItemName, std::move(name)};
  }
  static RecordSelector category(std::string name)
  {
    return {Field::Category, std::move(name)};
  }

  bool matches(ClosedAuctionRecord const &rec) const
  {
    return (field == Field::ItemName ? rec.item_name : rec.category) == value;
  }
};

struct StatsReport
{
  std::string  item_name;
  Money        min;
  Money        median;
  Money        max;
  std::int64_t quantity_sold = 0;
  std::size_t  sample_size   = 0;

  friend bool operator==(StatsReport const &, StatsReport const &) = default;
};

struct PeriodMedians
{
  Money past;
  Money present;
};

using Snapshot = std::shared_ptr<std::vector<ClosedAuctionRecord> const>;

/// Throws InvalidRecord when a record breaks the type invariants.
void validate(ClosedAuctionRecord const &rec);

/// Reports over a frozen set of records.
StatsReport   stats_report(Snapshot const &records, RecordSelector const &selector);
PeriodMedians aggregate_periods(Snapshot const &records, RecordSelector const &selector,
                                Seconds period_length, Timestamp now);

/**
 * In-memory historic store. Writers are serialized and publish a new immutable snapshot;
 * readers work on whichever snapshot they grabbed and never block writers.
 */
class Warehouse
{
public:
  Warehouse();

  struct InsertOutcome
  {
    enum class Kind
    {
      Added,
      Duplicate,
      Invalid,
    };
    Kind        kind = Kind::Added;
    std::string detail;
  };

  /// Stores `rec`; returns false (and counts a duplicate) when its key already exists.
  /// Throws InvalidRecord.
  bool add_record(ClosedAuctionRecord const &rec);

  /// Batch insert publishing one snapshot; invalid records are reported, not thrown.
  std::vector<InsertOutcome> add_records(std::span<ClosedAuctionRecord const> records);

  Snapshot    snapshot() const;
  std::size_t size() const;
  std::size_t duplicates() const;

  StatsReport   stats_report(RecordSelector const &selector) const;
  PeriodMedians aggregate_periods(RecordSelector const &selector, Seconds period_length,
                                  Timestamp now) const;

  /// Period medians fed through predict() with a generator seeded by `seed`.
  MarketPrediction market_prediction(RecordSelector const &selector, Seconds period_length,
                                     Timestamp now, std::uint64_t seed) const;

private:
  using Key = std::tuple<std::string, std::string, std::int64_t>;

  mutable std::mutex mutex_;
  Snapshot           records_;
  std::set<Key>      keys_;
  std::size_t        duplicates_ = 0;
};

}  // namespace agora::warehouse
