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

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace agora::warehouse {

/// Twice the median of `values`; exact for both parities (even sizes sum the two middles).
inline std::int64_t twice_median(std::vector<std::int64_t> values)
{
  if (values.empty())
  {
    throw std::invalid_argument("median of an empty sample");
  }
  auto const n   = values.size();
  auto const mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(values.begin(), mid, values.end());
  std::int64_t const upper = *mid;
  if (n % 2 == 1)
  {
    return 2 * upper;
  }
  std::int64_t const lower = *std::max_element(values.begin(), mid);
  return lower + upper;
}

/// Median rounded down to a whole unit. Inputs are non-negative.
inline std::int64_t median_floor(std::vector<std::int64_t> values)
{
  return twice_median(std::move(values)) / 2;
}

}  // namespace agora::warehouse
