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

#include "agora/auction/auction.hpp"

#include <algorithm>

namespace agora::auction {

std::string_view to_string(BidOrigin origin)
{
  return origin == BidOrigin::Live ? "LIVE" : "AUTO";
}

std::optional<BidOrigin> parse_bid_origin(std::string_view text)
{
  if (text == "LIVE")
  {
    return BidOrigin::Live;
  }
  if (text == "AUTO")
  {
    return BidOrigin::Auto;
  }
  return std::nullopt;
}

std::string_view to_string(AuctionState state)
{
  return state == AuctionState::Open ? "OPEN" : "CLOSED";
}

std::string_view to_string(BidRejected::Reason reason)
{
  switch (reason)
  {
  case BidRejected::Reason::AuctionClosed:
    return "AuctionClosed";
  case BidRejected::Reason::NotStarted:
    return "NotStarted";
  case BidRejected::Reason::OutOfOrder:
    return "OutOfOrder";
  case BidRejected::Reason::TooLow:
    return "BidTooLow";
  case BidRejected::Reason::SelfOutbid:
    return "SelfOutbid";
  }
  return "Unknown";
}

Auction::Auction(AuctionSpec spec)
  : spec_(std::move(spec))
  , close_time_(spec_.open_time + spec_.duration)
{}

Auction Auction::open(AuctionSpec spec)
{
  if (spec.duration <= Seconds{0})
  {
    throw InvalidSpec("auction duration must be positive");
  }
  if (spec.increment < Money{1})
  {
    throw InvalidSpec("bid increment must be at least one unit");
  }
  if (spec.id.empty())
  {
    throw InvalidSpec("auction id must be non-empty");
  }
  return Auction(std::move(spec));
}

Money Auction::required_minimum() const
{
  if (bids_.empty())
  {
    return spec_.start_price;
  }
  return bids_.back().amount + spec_.increment;
}

std::optional<Money> Auction::current_price() const
{
  if (bids_.empty())
  {
    return std::nullopt;
  }
  return bids_.back().amount;
}

BidReceipt Auction::place_bid(AgentId const &bidder, Money amount, Timestamp now,
                              BidOrigin origin)
{
  if (state_ == AuctionState::Closed || now >= close_time_)
  {
    throw AuctionClosed(spec_.id);
  }
  if (now < spec_.open_time)
  {
    throw BidRejected(BidRejected::Reason::NotStarted, "auction not yet open: " + spec_.id);
  }
  if (!bids_.empty() && now < bids_.back().timestamp)
  {
    throw BidRejected(BidRejected::Reason::OutOfOrder, "bid time precedes the last bid");
  }
  if (!bids_.empty() && bids_.back().bidder == bidder && amount <= bids_.back().amount)
  {
    throw SelfOutbid(bidder.name);
  }
  if (amount < required_minimum())
  {
    throw BidTooLow(required_minimum());
  }

  BidReceipt receipt{Bid{spec_.id, bidder, amount, now, origin}, std::nullopt};
  bids_.push_back(receipt.bid);

  if (now >= close_time_ - kExtensionWindow)
  {
    Timestamp const previous = close_time_;
    close_time_ += kExtensionWindow;
    receipt.extension = Extended{spec_.id, previous, close_time_, now};
  }
  return receipt;
}

std::optional<Bid> Auction::winning_bid() const
{
  if (bids_.empty())
  {
    return std::nullopt;
  }
  auto const best = std::max_element(bids_.begin(), bids_.end(), [](Bid const &a, Bid const &b) {
    if (a.amount != b.amount)
    {
      return a.amount < b.amount;
    }
    return a.timestamp > b.timestamp;
  });
  return *best;
}

std::vector<EngineEvent> Auction::tick(Timestamp now)
{
  std::vector<EngineEvent> events;
  if (state_ == AuctionState::Closed)
  {
    return events;
  }

  if (!final_minute_announced_ && now >= close_time_ - kExtensionWindow && now < close_time_)
  {
    final_minute_announced_ = true;
    events.emplace_back(EnteredFinalMinute{spec_.id, now});
  }

  if (now >= close_time_)
  {
    state_ = AuctionState::Closed;
    AuctionOutcome outcome{spec_.id, std::nullopt, std::nullopt, close_time_};
    if (auto const best = winning_bid())
    {
      outcome.winner         = best->bidder;
      outcome.winning_amount = best->amount;
    }
    outcome_ = outcome;
    events.emplace_back(Closed{std::move(outcome)});
  }
  return events;
}

}  // namespace agora::auction
