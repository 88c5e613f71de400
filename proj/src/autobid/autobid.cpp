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

#include "agora/autobid/autobid.hpp"

namespace agora::autobid {

std::string_view to_string(AutoBidStatus status)
{
  switch (status)
  {
  case AutoBidStatus::Active:
    return "ACTIVE";
  case AutoBidStatus::AtMax:
    return "AT_MAX";
  case AutoBidStatus::Cancelled:
    return "CANCELLED";
  }
  return "UNKNOWN";
}

std::optional<AutoBidStatus> parse_autobid_status(std::string_view text)
{
  for (auto s : {AutoBidStatus::Active, AutoBidStatus::AtMax, AutoBidStatus::Cancelled})
  {
    if (to_string(s) == text)
    {
      return s;
    }
  }
  return std::nullopt;
}

namespace {

bool owner_is_winning(AutoBidConfig const &config, Auction const &auction)
{
  auto const best = auction.winning_bid();
  return best && best->bidder == config.owner;
}

AutoBidDecision step_to(AutoBidConfig &config, Money target)
{
  if (target <= config.max_amount)
  {
    return Rebid{target};
  }
  config.status = AutoBidStatus::AtMax;
  return AwaitOwner{};
}

AutoBidDecision evaluate(AutoBidConfig &config, Auction const &auction)
{
  if (owner_is_winning(config, auction))
  {
    return NoAction{};
  }
  return step_to(config, auction.required_minimum());
}

void require_open(Auction const &auction)
{
  if (auction.state() != auction::AuctionState::Open)
  {
    throw auction::AuctionClosed(auction.id());
  }
}

}  // namespace

AutoBidDecision create_autobid(AutoBidConfig &config, Auction const &auction)
{
  require_open(auction);
  if (config.max_amount < auction.spec().start_price)
  {
    throw MaxBelowStart("maximum " + to_string(config.max_amount) + " is below start price " +
                        to_string(auction.spec().start_price));
  }
  config.status = AutoBidStatus::Active;
  return evaluate(config, auction);
}

AutoBidDecision on_outbid(AutoBidConfig &config, Auction const &auction, Money new_current)
{
  if (config.status != AutoBidStatus::Active)
  {
    throw InactiveAutobid("auto-bid " + config.id + " is " + std::string(to_string(config.status)));
  }
  if (owner_is_winning(config, auction))
  {
    return NoAction{};
  }
  return step_to(config, new_current + auction.spec().increment);
}

AutoBidDecision raise_max(AutoBidConfig &config, Auction const &auction, Money new_max)
{
  if (config.status == AutoBidStatus::Cancelled)
  {
    throw InactiveAutobid("auto-bid " + config.id + " is cancelled");
  }
  if (new_max <= config.max_amount)
  {
    throw NotAnIncrease("new maximum " + to_string(new_max) + " does not exceed " +
                        to_string(config.max_amount));
  }
  require_open(auction);
  config.max_amount = new_max;
  config.status     = AutoBidStatus::Active;
  return evaluate(config, auction);
}

void cancel(AutoBidConfig &config)
{
  if (config.status == AutoBidStatus::Cancelled)
  {
    throw InactiveAutobid("auto-bid " + config.id + " is already cancelled");
  }
  config.status = AutoBidStatus::Cancelled;
}

}  // namespace agora::autobid
