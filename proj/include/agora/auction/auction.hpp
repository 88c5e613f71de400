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

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "agora/acl/message.hpp"
#include "agora/core/error.hpp"
#include "agora/core/money.hpp"
#include "agora/core/time.hpp"

namespace agora::auction {

using acl::AgentId;

/// A bid landing at or after close_time - kExtensionWindow pushes close_time out by the same
/// amount.
inline constexpr Seconds kExtensionWindow{60};

enum class BidOrigin
{
  Live,
  Auto,
};

std::string_view         to_string(BidOrigin origin);
std::optional<BidOrigin> parse_bid_origin(std::string_view text);

enum class AuctionState
{
  Open,
  Closed,
};

std::string_view to_string(AuctionState state);

struct Bid
{
  std::string auction_id;
  AgentId     bidder;
  Money       amount;
  Timestamp   timestamp;
  BidOrigin   origin = BidOrigin::Live;

  friend bool operator==(Bid const &, Bid const &) = default;
};

struct AuctionSpec
{
  std::string id;
  std::string item_name;
  std::string category;
  AgentId     seller;
  Money       start_price;
  Money       increment{1};
  Timestamp   open_time;
  Seconds     duration{0};
};

struct AuctionOutcome
{
  std::string            auction_id;
  std::optional<AgentId> winner;
  std::optional<Money>   winning_amount;
  Timestamp              closed_at;

  friend bool operator==(AuctionOutcome const &, AuctionOutcome const &) = default;
};

struct EnteredFinalMinute
{
  std::string auction_id;
  Timestamp   at;
};

struct Extended
{
  std::string auction_id;
  Timestamp   previous_close;
  Timestamp   new_close;
  Timestamp   at;
};

struct Closed
{
  AuctionOutcome outcome;
};

using EngineEvent = std::variant<EnteredFinalMinute, Extended, Closed>;

struct BidReceipt
{
  Bid                     bid;
  std::optional<Extended> extension;
};

class AuctionError : public Error
{
public:
  using Error::Error;
};

class InvalidSpec : public AuctionError
{
public:
  using AuctionError::AuctionError;
};

/// Base of every reason a bid can be turned away.
class BidRejected : public AuctionError
{
public:
  enum class Reason
  {
    AuctionClosed,
    NotStarted,
    OutOfOrder,
    TooLow,
    SelfOutbid,
  };

  BidRejected(Reason reason, std::string const &what)
    : AuctionError(what)
    , reason_(reason)
  {}

  Reason reason() const noexcept
  {
    return reason_;
  }

private:
  Reason reason_;
};

std::string_view to_string(BidRejected::Reason reason);

class AuctionClosed : public BidRejected
{
public:
  explicit AuctionClosed(std::string const &auction_id)
    : BidRejected(Reason::AuctionClosed, "auction closed: " + auction_id)
  {}
};

class BidTooLow : public BidRejected
{
public:
  explicit BidTooLow(Money required_minimum)
    : BidRejected(Reason::TooLow, "bid too low, minimum " + to_string(required_minimum))
    , required_minimum_(required_minimum)
  {}

  Money required_minimum() const noexcept
  {
    return required_minimum_;
  }

private:
  Money required_minimum_;
};

class SelfOutbid : public BidRejected
{
public:
  explicit SelfOutbid(std::string const &bidder)
    : BidRejected(Reason::SelfOutbid, bidder + " already holds the winning bid")
  {}
};

/**
 * English auction with the one-minute anti-sniping extension.
 *
 * The first bid must reach start_price; every later bid must reach the current winning
 * amount plus the increment, so accepted amounts are strictly increasing. Time is always
 * supplied by the caller.
 */
class Auction
{
public:
  /// Throws InvalidSpec unless duration > 0 and increment >= 1.
  static Auction open(AuctionSpec spec);

  std::string const &id() const noexcept
  {
    return spec_.id;
  }
  AuctionSpec const &spec() const noexcept
  {
    return spec_;
  }
  Timestamp close_time() const noexcept
  {
    return close_time_;
  }
  AuctionState state() const noexcept
  {
    return state_;
  }
  std::vector<Bid> const &bids() const noexcept
  {
    return bids_;
  }
  bool final_minute_announced() const noexcept
  {
    return final_minute_announced_;
  }
  std::optional<AuctionOutcome> const &outcome() const noexcept
  {
    return outcome_;
  }

  /// Lowest amount the next bid may carry.
  Money required_minimum() const;

  /// Current winning amount, if any bid has been accepted.
  std::optional<Money> current_price() const;

  BidReceipt place_bid(AgentId const &bidder, Money amount, Timestamp now,
                       BidOrigin origin = BidOrigin::Live);

  /// Highest accepted bid, earliest timestamp first among equals.
  std::optional<Bid> winning_bid() const;

  /// Closes the auction once now reaches close_time and announces the final minute once.
  /// Repeated calls with the same now emit nothing new.
  std::vector<EngineEvent> tick(Timestamp now);

private:
  explicit Auction(AuctionSpec spec);

  AuctionSpec                   spec_;
  Timestamp                     close_time_;
  AuctionState                  state_ = AuctionState::Open;
  std::vector<Bid>              bids_;
  bool                          final_minute_announced_ = false;
  std::optional<AuctionOutcome> outcome_;
};

}  // namespace agora::auction
