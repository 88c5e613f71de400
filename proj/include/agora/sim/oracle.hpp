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

#include <cstddef>
#include <string_view>
#include <vector>

#include "agora/core/error.hpp"
#include "agora/core/money.hpp"

namespace agora::sim {

class SimError : public Error
{
public:
  using Error::Error;
};

class InvalidParams : public SimError
{
public:
  using SimError::SimError;
};

/// A opens the auction; B is the second mover.
enum class Party
{
  A,
  B,
};

std::string_view to_string(Party party);

struct DuelResult
{
  Party winner = Party::A;
  Money price;

  friend bool operator==(DuelResult const &, DuelResult const &) = default;
};

/// Brute-force strict alternation: A bids start, then whoever was outbid rebids
/// current + increment while that stays within its maximum.
/// Throws InvalidParams unless both maxima reach start and increment >= 1.
DuelResult oracle_duel(Money max_a, Money max_b, Money increment, Money start);

struct DuelPoint
{
  Money max_a;
  Money max_b;
  Money increment;
  Money start;

  friend bool operator==(DuelPoint const &, DuelPoint const &) = default;
};

/// Same duel played by two auto-bid agents through the auction house.
DuelResult run_duel_agents(DuelPoint const &point);

struct DuelGrid
{
  std::vector<Money> max_a;
  std::vector<Money> max_b;
  std::vector<Money> increments;
  std::vector<Money> starts;
  /// Equal maxima are skipped unless set.
  bool include_equal = false;

  /// lo, lo+step, ..., up to hi inclusive.
  static std::vector<Money> range(Money lo, Money hi, Money step);
};

struct DuelMismatch
{
  DuelPoint  point;
  DuelResult oracle;
  DuelResult agents;
};

struct FuzzReport
{
  std::size_t               points = 0;
  std::vector<DuelMismatch> mismatches;
};

FuzzReport fuzz_duels(DuelGrid const &grid);

}  // namespace agora::sim
