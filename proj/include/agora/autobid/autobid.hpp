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

#include "agora/auction/auction.hpp"

namespace agora::autobid {

using acl::AgentId;
using auction::Auction;

enum class AutoBidStatus
{
  Active,
  AtMax,
  Cancelled,
};

std::string_view             to_string(AutoBidStatus status);
std::optional<AutoBidStatus> parse_autobid_status(std::string_view text);

/// A buyer's proxy-bid mandate on one auction.
struct AutoBidConfig
{
  std::string   id;
  std::string   auction_id;
  AgentId       owner;
  Money         max_amount;
  AutoBidStatus status = AutoBidStatus::Active;

  friend bool operator==(AutoBidConfig const &, AutoBidConfig const &) = default;
};

struct Rebid
{
  Money amount;
  friend bool operator==(Rebid const &, Rebid const &) = default;
};

/// The mandate is exhausted; the owner must raise the maximum or cancel.
struct AwaitOwner
{
  friend bool operator==(AwaitOwner const &, AwaitOwner const &) = default;
};

struct NoAction
{
  friend bool operator==(NoAction const &, NoAction const &) = default;
};

using AutoBidDecision = std::variant<Rebid, AwaitOwner, NoAction>;

class AutoBidError : public Error
{
public:
  using Error::Error;
};

class MaxBelowStart : public AutoBidError
{
public:
  using AutoBidError::AutoBidError;
};

class InactiveAutobid : public AutoBidError
{
public:
  using AutoBidError::AutoBidError;
};

class NotAnIncrease : public AutoBidError
{
public:
  using AutoBidError::AutoBidError;
};

// The functions below are pure in the sense that they only read the auction and update the
// config passed in; placing the resulting bid is the caller's job.

/// First evaluation of a fresh mandate. Throws auction::AuctionClosed or MaxBelowStart.
AutoBidDecision create_autobid(AutoBidConfig &config, Auction const &auction);

/// Reaction to someone else taking the lead at `new_current`. Throws InactiveAutobid unless
/// the config is ACTIVE.
AutoBidDecision on_outbid(AutoBidConfig &config, Auction const &auction, Money new_current);

/// Lifts the maximum, reactivates and re-evaluates against the current price.
AutoBidDecision raise_max(AutoBidConfig &config, Auction const &auction, Money new_max);

/// Terminal; bids already placed stay in the auction.
void cancel(AutoBidConfig &config);

}  // namespace agora::autobid
