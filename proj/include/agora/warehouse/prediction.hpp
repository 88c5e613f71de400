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

#include <cmath>
#include <cstdint>
#include <string>

#include "agora/core/money.hpp"
#include "agora/warehouse/rng.hpp"

namespace agora::warehouse {

/// Market prediction from the stochastic past/present projection:
///   variant1 = floor(past * r1) + present
///   variant2 = (past + present) / 2            (exact; may end in .5)
///   future   = floor(variant2 + r2) + variant1
struct MarketPrediction
{
  std::string   item_name;
  Money         past;
  Money         present;
  Money         variant1;
  double        variant2 = 0.0;
  Money         future;
  std::uint64_t seed = 0;

  friend bool operator==(MarketPrediction const &, MarketPrediction const &) = default;
};

/// Draws r1 then r2 from `rng`.
template <UniformSource R>
MarketPrediction predict(Money past, Money present, R &rng)
{
  double const r1 = rng.next();
  double const r2 = rng.next();

  MarketPrediction p;
  p.past     = past;
  p.present  = present;
  p.seed     = rng.seed();
  p.variant1 = Money{static_cast<std::int64_t>(std::floor(static_cast<double>(past.minor()) * r1))} +
               present;

  std::int64_t const sum = past.minor() + present.minor();
  p.variant2             = static_cast<double>(sum) / 2.0;
  // floor(sum / 2 + r2) with r2 in [0, 1): only an odd sum can be lifted by r2.
  std::int64_t const lifted = sum / 2 + ((sum % 2 == 1 && r2 >= 0.5) ? 1 : 0);
  p.future                  = Money{lifted} + p.variant1;
  return p;
}

}  // namespace agora::warehouse
