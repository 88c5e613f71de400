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
#include <optional>
#include <string>

#include "agora/core/money.hpp"
#include "agora/core/time.hpp"

namespace agora::warehouse {

/// One historic sale. (site, item_name, close_time) is the unique key.
struct ClosedAuctionRecord
{
  std::string                site;
  std::optional<std::string> item_code;
  std::string                item_name;
  std::string                category;
  Money                      closed_price;
  std::int64_t               num_bids = 0;
  Timestamp                  close_time;
  std::int64_t               quantity = 1;

  friend bool operator==(ClosedAuctionRecord const &, ClosedAuctionRecord const &) = default;
};

}  // namespace agora::warehouse
