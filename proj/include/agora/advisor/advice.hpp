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
#include <string>

#include "agora/core/money.hpp"
#include "agora/core/time.hpp"

namespace agora::advisor {

/// The four facts a buyer sends when asking for advice.
struct AdviceRequest
{
  std::string  item_name;
  Money        current_bid;
  std::int64_t num_bids = 0;
  Seconds      remaining_duration{0};

  friend bool operator==(AdviceRequest const &, AdviceRequest const &) = default;
};

struct AdviceBasis
{
  std::size_t sample_size = 0;
  Money       median_closed_price;
  double      median_num_bids = 0.0;

  friend bool operator==(AdviceBasis const &, AdviceBasis const &) = default;
};

struct AdviceResponse
{
  Money       recommended_bid;
  Timestamp   recommended_bid_time;
  bool        should_bid = false;
  AdviceBasis basis;

  friend bool operator==(AdviceResponse const &, AdviceResponse const &) = default;
};

}  // namespace agora::advisor
