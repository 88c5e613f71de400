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

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <variant>
#include <vector>

#include "agora/acl/platform.hpp"
#include "agora/auction/auction.hpp"
#include "agora/autobid/autobid.hpp"

namespace agora::market {

using acl::AgentId;
using auction::Auction;
using auction::AuctionSpec;
using auction::BidOrigin;
using autobid::AutoBidConfig;

struct AuctionOpened
{
  AuctionSpec spec;
  Timestamp   close_time;
};

struct BidAccepted
{
  auction::Bid bid;
  Money        required_next;
};

struct BidRefused
{
  std::string                  auction_id;
  AgentId                      bidder;
  Money                        amount;
  BidOrigin                    origin = BidOrigin::Live;
  auction::BidRejected::Reason reason = auction::BidRejected::Reason::TooLow;
  std::optional<Money>         required_minimum;
  Timestamp                    at;
};

struct AutoBidChanged
{
  enum class Change
  {
    Created,
    AtMax,
    Raised,
    Cancelled,
  };

  Change        change = Change::Created;
  AutoBidConfig config;
  Timestamp     at;
};

using MarketEvent = std::variant<AuctionOpened, BidAccepted, BidRefused, auction::Extended,
                                 auction::EnteredFinalMinute, auction::Closed, AutoBidChanged>;

class MarketError : public Error
{
public:
  using Error::Error;
};

class UnknownAuction : public MarketError
{
public:
  explicit UnknownAuction(std::string const &id)
    : MarketError("unknown auction: " + id)
  {}
};

class UnknownAutobid : public MarketError
{
public:
  explicit UnknownAutobid(std::string const &id)
    : MarketError("unknown auto-bid: " + id)
  {}
};

class DuplicateAutobid : public MarketError
{
public:
  using MarketError::MarketError;
};

/**
 * Binds auctions to proxy-bid agents over the ACL platform.
 *
 * An "auctioneer" agent owns the auctions. After every accepted bid it sends an INFORM
 * outbid notice to each active auto-bid agent on that auction whose owner no longer leads.
 * The agent decides with the autobid rules and answers with a PROPOSE carrying its bid,
 * which the auctioneer accepts (ACCEPT_PROPOSAL) or turns down (REFUSE). Delivery is
 * synchronous, so when a call returns on a single thread the market is quiescent.
 *
 * Every state change is reported to the sink in the order it was applied. The sink must not
 * call back into the house.
 */
class AuctionHouse
{
public:
  using EventSink = std::function<void(MarketEvent const &)>;

  static constexpr std::string_view kAuctioneerName = "auctioneer";
  static constexpr std::string_view kAgentPrefix    = "autobid-";

  explicit AuctionHouse(acl::Platform &platform, EventSink sink = {});
  ~AuctionHouse();

  AuctionHouse(AuctionHouse const &)            = delete;
  AuctionHouse &operator=(AuctionHouse const &) = delete;

  /// Assigns an id when spec.id is empty. Throws auction::InvalidSpec.
  std::string open_auction(AuctionSpec spec);

  /// Live bid. Rejections are reported to the sink and rethrown.
  auction::BidReceipt place_bid(std::string const &auction_id, AgentId const &bidder,
                                Money amount, Timestamp now);

  AutoBidConfig create_autobid(std::string const &auction_id, AgentId const &owner,
                               Money max_amount, Timestamp now);
  AutoBidConfig raise_max(std::string const &autobid_id, Money new_max, Timestamp now);
  AutoBidConfig cancel_autobid(std::string const &autobid_id, Timestamp now);

  /// Advances every open auction to `now`.
  void tick(Timestamp now);

  std::vector<Auction>         auctions() const;
  std::optional<Auction>       find_auction(std::string const &id) const;
  std::vector<AutoBidConfig>   autobids() const;
  std::optional<AutoBidConfig> find_autobid(std::string const &id) const;

  AgentId const &auctioneer() const noexcept
  {
    return auctioneer_;
  }

  // Replay: rebuild state from recorded events without emitting anything or messaging agents.
  void restore_open(AuctionSpec spec);
  void restore_bid(std::string const &auction_id, AgentId const &bidder, Money amount,
                   BidOrigin origin, Timestamp at);
  void restore_close(std::string const &auction_id, Timestamp at);
  void restore_autobid(AutoBidConfig const &config);

private:
  struct AuctionSlot
  {
    explicit AuctionSlot(Auction a)
      : auction(std::move(a))
    {}
    std::mutex mutex;
    Auction    auction;
  };

  struct Notice
  {
    AgentId agent;
    AgentId owner;
  };

  std::shared_ptr<AuctionSlot> slot(std::string const &auction_id) const;
  void                         emit(MarketEvent const &event) const;

  auction::BidReceipt accept_bid(std::string const &auction_id, AgentId const &bidder,
                                 Money amount, Timestamp now, BidOrigin origin);
  std::vector<std::string> tick_locked(AuctionSlot &slot, Timestamp now);
  void                     retire_agents(std::vector<std::string> const &closed_auctions);

  AgentId register_agent(std::string const &autobid_id);
  void    propose(std::string const &autobid_id, Money amount, Timestamp at);
  void    on_auctioneer_message(acl::AclMessage const &msg);
  void    on_agent_message(std::string const &autobid_id, acl::AclMessage const &msg);

  acl::Platform &platform_;
  EventSink      sink_;
  AgentId        auctioneer_;

  mutable std::shared_mutex                           auctions_mutex_;
  std::map<std::string, std::shared_ptr<AuctionSlot>> auctions_;
  std::vector<std::string>                            auction_order_;

  mutable std::mutex                   autobids_mutex_;
  std::map<std::string, AutoBidConfig> autobids_;
  std::map<std::string, AgentId>       agents_;
  std::map<std::string, std::string>   agent_to_autobid_;
  std::vector<std::string>             autobid_order_;

  std::atomic<std::uint64_t> next_auction_{0};
  std::atomic<std::uint64_t> next_autobid_{0};
};

}  // namespace agora::market
