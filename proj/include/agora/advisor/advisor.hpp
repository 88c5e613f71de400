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
#include <functional>
#include <string>
#include <vector>

#include "agora/acl/platform.hpp"
#include "agora/advisor/advice.hpp"
#include "agora/warehouse/warehouse.hpp"

namespace agora::advisor {

inline constexpr std::string_view kAdviceService = "bid-advice";

/// Recommended bidding time sits this far before the close.
inline constexpr Seconds kBidLeadTime{300};

struct AdvisorConfig
{
  /// Only records closed within this window before "now" count as recent.
  Seconds     lookback{90 * 24 * 3600};
  std::size_t min_history = 3;
};

/// Records the rule base reasons over for one item, after the item-then-category fallback.
struct HistorySample
{
  std::vector<warehouse::ClosedAuctionRecord> records;
  bool                                        by_category = false;
};

/// Recent records for `item_name`; falls back to the item's category when exact matches are
/// fewer than config.min_history. Throws warehouse::InsufficientHistory when even the
/// fallback is short.
HistorySample select_history(warehouse::Snapshot const &snapshot, std::string const &item_name,
                             Timestamp now, AdvisorConfig const &config);

/// Bids need not exceed the median recent closing price.
Money recommended_max_bid(HistorySample const &sample);

/// Bid towards the end: five minutes before the close.
constexpr Timestamp recommended_bid_time(Timestamp close_time)
{
  return close_time - kBidLeadTime;
}

/// Prefer auctions with fewer bids than the historic median.
bool should_bid(std::int64_t num_bids, HistorySample const &sample);

/// Exact median number of bids (may end in .5).
double median_num_bids(HistorySample const &sample);

/**
 * The rule-base advisor. Answers advice requests arriving as ACL REQUEST messages whose
 * content is an advice-request document.
 */
class Advisor
{
public:
  using Clock = std::function<Timestamp()>;

  Advisor(warehouse::Warehouse const &warehouse, AdvisorConfig config, Clock clock);

  /// Full answer at `now`. Throws warehouse::InsufficientHistory.
  AdviceResponse advise(AdviceRequest const &request, Timestamp now) const;

  /**
   * Replies to one message: AGREE + INFORM(advice-response) on success, REFUSE
   * (advice-refusal) when history is insufficient, FAILURE when the content is not a valid
   * advice request or the message is not a REQUEST.
   */
  std::vector<acl::AclMessage> handle_advice_message(acl::AclMessage const &msg,
                                                     acl::AgentId const  &self,
                                                     Timestamp            now) const;

  /// Registers the advisor as a reactive agent offering kAdviceService.
  acl::AgentId attach(acl::Platform &platform, std::string const &name = "advisor") const;

  AdvisorConfig const &config() const noexcept
  {
    return config_;
  }

private:
  warehouse::Warehouse const &warehouse_;
  AdvisorConfig               config_;
  Clock                       clock_;
};

}  // namespace agora::advisor
