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

#include "agora/market/auction_house.hpp"

#include <algorithm>
#include <charconv>

#include "agora/ingest/feed.hpp"
#include "agora/ingest/xml.hpp"

namespace agora::market {

using acl::AclMessage;
using acl::Performative;
using autobid::AutoBidStatus;

namespace {

constexpr std::string_view kProtocol = "auto-bid";

/// Content of auctioneer -> agent outbid notices and agent -> auctioneer proposals.
struct BidNote
{
  std::string auction_id;
  Money       amount;
  Timestamp   at;
};

std::string encode_note(std::string_view root, BidNote const &note)
{
  std::string out = "<";
  out += root;
  out += "><auction-id>" + ingest::xml::escape(note.auction_id) + "</auction-id><amount>" +
         to_string(note.amount) + "</amount><time>" + format_iso8601(note.at) + "</time></";
  out += root;
  out += ">";
  return out;
}

std::optional<BidNote> decode_note(std::string_view root_name, std::string_view content)
{
  try
  {
    auto const root = ingest::xml::parse(content);
    if (root.name != root_name)
    {
      return std::nullopt;
    }
    auto const id     = root.children_named("auction-id");
    auto const amount = root.children_named("amount");
    auto const time   = root.children_named("time");
    if (id.size() != 1 || amount.size() != 1 || time.size() != 1)
    {
      return std::nullopt;
    }
    auto const value = ingest::parse_unsigned(amount.front()->text);
    auto const at    = parse_iso8601(time.front()->text);
    if (!value || !at)
    {
      return std::nullopt;
    }
    return BidNote{id.front()->text, Money{*value}, *at};
  }
  catch (ingest::xml::MalformedDocument const &)
  {
    return std::nullopt;
  }
}

std::uint64_t numeric_suffix(std::string const &id, std::string_view prefix)
{
  if (id.rfind(prefix, 0) != 0)
  {
    return 0;
  }
  std::uint64_t value = 0;
  auto const    tail  = std::string_view(id).substr(prefix.size());
  auto const [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), value);
  if (ec != std::errc{} || ptr != tail.data() + tail.size())
  {
    return 0;
  }
  return value;
}

void raise_counter(std::atomic<std::uint64_t> &counter, std::uint64_t seen)
{
  auto current = counter.load();
  while (current < seen && !counter.compare_exchange_weak(current, seen))
  {
  }
}

}  // namespace

AuctionHouse::AuctionHouse(acl::Platform &platform, EventSink sink)
  : platform_(platform)
  , sink_(std::move(sink))
{
  auctioneer_ = platform_.ams_register(kAuctioneerName);
  platform_.set_behaviour(auctioneer_, [this](AclMessage const &msg) { on_auctioneer_message(msg); });
}

AuctionHouse::~AuctionHouse()
{
  std::vector<AgentId> agents;
  {
    std::lock_guard lock(autobids_mutex_);
    for (auto const &[id, agent] : agents_)
    {
      agents.push_back(agent);
    }
  }
  agents.push_back(auctioneer_);
  for (auto const &agent : agents)
  {
    try
    {
      platform_.ams_deregister(agent);
    }
    catch (acl::UnknownAgent const &)
    {
    }
  }
}

void AuctionHouse::emit(MarketEvent const &event) const
{
  if (sink_)
  {
    sink_(event);
  }
}

std::shared_ptr<AuctionHouse::AuctionSlot> AuctionHouse::slot(std::string const &auction_id) const
{
  std::shared_lock lock(auctions_mutex_);
  auto const       it = auctions_.find(auction_id);
  if (it == auctions_.end())
  {
    throw UnknownAuction(auction_id);
  }
  return it->second;
}

std::string AuctionHouse::open_auction(AuctionSpec spec)
{
  if (spec.id.empty())
  {
    spec.id = "A-" + std::to_string(++next_auction_);
  }
  else
  {
    raise_counter(next_auction_, numeric_suffix(spec.id, "A-"));
  }
  auto created = std::make_shared<AuctionSlot>(Auction::open(spec));

  std::unique_lock lock(auctions_mutex_);
  if (!auctions_.try_emplace(spec.id, created).second)
  {
    throw auction::InvalidSpec("auction id already in use: " + spec.id);
  }
  auction_order_.push_back(spec.id);
  std::lock_guard slot_lock(created->mutex);
  emit(AuctionOpened{spec, created->auction.close_time()});
  return spec.id;
}

std::vector<std::string> AuctionHouse::tick_locked(AuctionSlot &slot, Timestamp now)
{
  std::vector<std::string> closed;
  for (auto const &event : slot.auction.tick(now))
  {
    std::visit([this](auto const &e) { emit(e); }, event);
    if (std::holds_alternative<auction::Closed>(event))
    {
      closed.push_back(slot.auction.id());
    }
  }
  return closed;
}

void AuctionHouse::retire_agents(std::vector<std::string> const &closed_auctions)
{
  if (closed_auctions.empty())
  {
    return;
  }
  std::vector<AgentId> retired;
  {
    std::lock_guard lock(autobids_mutex_);
    for (auto const &[id, config] : autobids_)
    {
      if (std::find(closed_auctions.begin(), closed_auctions.end(), config.auction_id) ==
          closed_auctions.end())
      {
        continue;
      }
      if (auto const it = agents_.find(id); it != agents_.end())
      {
        retired.push_back(it->second);
        agent_to_autobid_.erase(it->second.name);
        agents_.erase(it);
      }
    }
  }
  for (auto const &agent : retired)
  {
    try
    {
      platform_.ams_deregister(agent);
    }
    catch (acl::UnknownAgent const &)
    {
    }
  }
}

void AuctionHouse::tick(Timestamp now)
{
  std::vector<std::shared_ptr<AuctionSlot>> slots;
  {
    std::shared_lock lock(auctions_mutex_);
    for (auto const &id : auction_order_)
    {
      slots.push_back(auctions_.at(id));
    }
  }
  std::vector<std::string> closed;
  for (auto const &s : slots)
  {
    std::lock_guard lock(s->mutex);
    auto const      done = tick_locked(*s, now);
    closed.insert(closed.end(), done.begin(), done.end());
  }
  retire_agents(closed);
}

auction::BidReceipt AuctionHouse::accept_bid(std::string const &auction_id, AgentId const &bidder,
                                             Money amount, Timestamp now, BidOrigin origin)
{
  auto const          target = slot(auction_id);
  std::vector<Notice> notices;
  std::vector<std::string> closed;
  auction::BidReceipt receipt;
  std::exception_ptr  rejected;
  {
    std::lock_guard lock(target->mutex);
    closed = tick_locked(*target, now);
    try
    {
      receipt = target->auction.place_bid(bidder, amount, now, origin);
    }
    catch (auction::BidRejected const &ex)
    {
      BidRefused refused{auction_id, bidder, amount, origin, ex.reason(), std::nullopt, now};
      if (auto const *low = dynamic_cast<auction::BidTooLow const *>(&ex))
      {
        refused.required_minimum = low->required_minimum();
      }
      emit(refused);
      rejected = std::current_exception();
    }

    if (!rejected)
    {
      emit(BidAccepted{receipt.bid, target->auction.required_minimum()});
      if (receipt.extension)
      {
        emit(*receipt.extension);
      }

      std::lock_guard autobid_lock(autobids_mutex_);
      for (auto const &[id, config] : autobids_)
      {
        if (config.auction_id == auction_id && config.status == AutoBidStatus::Active &&
            config.owner != bidder)
        {
          if (auto const agent = agents_.find(id); agent != agents_.end())
          {
            notices.push_back({agent->second, config.owner});
          }
        }
      }
    }
  }
  if (rejected)
  {
    retire_agents(closed);
    std::rethrow_exception(rejected);
  }

  for (auto const &notice : notices)
  {
    AclMessage msg;
    msg.performative    = Performative::Inform;
    msg.sender          = auctioneer_;
    msg.receivers       = {notice.agent};
    msg.content         = encode_note("outbid-notice", {auction_id, receipt.bid.amount, now});
    msg.conversation_id = platform_.next_conversation_id();
    msg.protocol        = std::string(kProtocol);
    platform_.acc_send(std::move(msg));
  }
  return receipt;
}

auction::BidReceipt AuctionHouse::place_bid(std::string const &auction_id, AgentId const &bidder,
                                            Money amount, Timestamp now)
{
  return accept_bid(auction_id, bidder, amount, now, BidOrigin::Live);
}

AgentId AuctionHouse::register_agent(std::string const &autobid_id)
{
  auto const agent = platform_.ams_register(std::string(kAgentPrefix) + autobid_id);
  platform_.set_behaviour(agent, [this, autobid_id](AclMessage const &msg) {
    on_agent_message(autobid_id, msg);
  });
  return agent;
}

void AuctionHouse::propose(std::string const &autobid_id, Money amount, Timestamp at)
{
  AgentId     agent;
  std::string auction_id;
  {
    std::lock_guard lock(autobids_mutex_);
    auto const      it = agents_.find(autobid_id);
    if (it == agents_.end())
    {
      return;
    }
    agent      = it->second;
    auction_id = autobids_.at(autobid_id).auction_id;
  }
  AclMessage msg;
  msg.performative    = Performative::Propose;
  msg.sender          = agent;
  msg.receivers       = {auctioneer_};
  msg.content         = encode_note("bid-proposal", {auction_id, amount, at});
  msg.conversation_id = platform_.next_conversation_id();
  msg.protocol        = std::string(kProtocol);
  msg.reply_with      = msg.conversation_id + "/proposal";
  platform_.acc_send(std::move(msg));
}

AutoBidConfig AuctionHouse::create_autobid(std::string const &auction_id, AgentId const &owner,
                                           Money max_amount, Timestamp now)
{
  auto const               target = slot(auction_id);
  std::vector<std::string> closed;
  autobid::AutoBidDecision decision;
  AutoBidConfig            config;
  {
    std::lock_guard lock(target->mutex);
    closed = tick_locked(*target, now);
    if (closed.empty())
    {
      std::lock_guard autobid_lock(autobids_mutex_);
      for (auto const &[id, existing] : autobids_)
      {
        if (existing.auction_id == auction_id && existing.owner == owner &&
            existing.status != AutoBidStatus::Cancelled)
        {
          throw DuplicateAutobid(owner.name + " already has auto-bid " + id + " on " + auction_id);
        }
      }

      config.auction_id = auction_id;
      config.owner      = owner;
      config.max_amount = max_amount;
      decision          = autobid::create_autobid(config, target->auction);

      config.id = "AB-" + std::to_string(++next_autobid_);
      auto const agent = register_agent(config.id);
      autobids_.emplace(config.id, config);
      agents_.emplace(config.id, agent);
      agent_to_autobid_.emplace(agent.name, config.id);
      autobid_order_.push_back(config.id);

      AutoBidConfig created = config;
      created.status        = AutoBidStatus::Active;
      emit(AutoBidChanged{AutoBidChanged::Change::Created, created, now});
      if (config.status == AutoBidStatus::AtMax)
      {
        emit(AutoBidChanged{AutoBidChanged::Change::AtMax, config, now});
      }
    }
  }
  if (!closed.empty())
  {
    retire_agents(closed);
    throw auction::AuctionClosed(auction_id);
  }

  if (auto const *rebid = std::get_if<autobid::Rebid>(&decision))
  {
    propose(config.id, rebid->amount, now);
  }
  return *find_autobid(config.id);
}

AutoBidConfig AuctionHouse::raise_max(std::string const &autobid_id, Money new_max, Timestamp now)
{
  std::string auction_id;
  {
    std::lock_guard lock(autobids_mutex_);
    auto const      it = autobids_.find(autobid_id);
    if (it == autobids_.end())
    {
      throw UnknownAutobid(autobid_id);
    }
    auction_id = it->second.auction_id;
  }

  auto const               target = slot(auction_id);
  std::vector<std::string> closed;
  autobid::AutoBidDecision decision;
  {
    std::lock_guard lock(target->mutex);
    closed = tick_locked(*target, now);
    std::lock_guard autobid_lock(autobids_mutex_);
    auto           &config = autobids_.at(autobid_id);
    AutoBidConfig   trial  = config;
    if (closed.empty())
    {
      decision = autobid::raise_max(trial, target->auction, new_max);
      bool const went_at_max = trial.status == AutoBidStatus::AtMax;
      trial.status           = AutoBidStatus::Active;
      config                 = trial;
      emit(AutoBidChanged{AutoBidChanged::Change::Raised, config, now});
      if (went_at_max)
      {
        config.status = AutoBidStatus::AtMax;
        emit(AutoBidChanged{AutoBidChanged::Change::AtMax, config, now});
      }
    }
  }
  if (!closed.empty())
  {
    retire_agents(closed);
    throw auction::AuctionClosed(auction_id);
  }

  if (auto const *rebid = std::get_if<autobid::Rebid>(&decision))
  {
    propose(autobid_id, rebid->amount, now);
  }
  return *find_autobid(autobid_id);
}

AutoBidConfig AuctionHouse::cancel_autobid(std::string const &autobid_id, Timestamp now)
{
  std::optional<AgentId> agent;
  AutoBidConfig          result;
  {
    std::lock_guard lock(autobids_mutex_);
    auto const      it = autobids_.find(autobid_id);
    if (it == autobids_.end())
    {
      throw UnknownAutobid(autobid_id);
    }
    autobid::cancel(it->second);
    result = it->second;
    emit(AutoBidChanged{AutoBidChanged::Change::Cancelled, result, now});
    if (auto const a = agents_.find(autobid_id); a != agents_.end())
    {
      agent = a->second;
      agent_to_autobid_.erase(a->second.name);
      agents_.erase(a);
    }
  }
  if (agent)
  {
    try
    {
      platform_.ams_deregister(*agent);
    }
    catch (acl::UnknownAgent const &)
    {
    }
  }
  return result;
}

void AuctionHouse::on_auctioneer_message(AclMessage const &msg)
{
  if (msg.performative != Performative::Propose)
  {
    return;
  }
  auto const reply = [&](Performative p, std::string content) {
    platform_.acc_send(acl::make_reply(msg, auctioneer_, p, std::move(content)));
  };

  auto const note = decode_note("bid-proposal", msg.content);
  if (!note)
  {
    reply(Performative::Refuse, "unreadable proposal");
    return;
  }

  AgentId owner;
  {
    std::lock_guard lock(autobids_mutex_);
    auto const      id = agent_to_autobid_.find(msg.sender.name);
    if (id == agent_to_autobid_.end())
    {
      reply(Performative::Refuse, "not an auto-bid agent");
      return;
    }
    auto const &config = autobids_.at(id->second);
    if (config.status != AutoBidStatus::Active || config.auction_id != note->auction_id ||
        note->amount > config.max_amount)
    {
      reply(Performative::Refuse, "proposal outside the mandate");
      return;
    }
    owner = config.owner;
  }

  try
  {
    accept_bid(note->auction_id, owner, note->amount, note->at, BidOrigin::Auto);
  }
  catch (auction::BidRejected const &ex)
  {
    reply(Performative::Refuse, ex.what());
    return;
  }
  reply(Performative::AcceptProposal, "");
}

void AuctionHouse::on_agent_message(std::string const &autobid_id, AclMessage const &msg)
{
  if (msg.performative != Performative::Inform)
  {
    return;
  }
  auto const note = decode_note("outbid-notice", msg.content);
  if (!note)
  {
    return;
  }
  auto const observed = find_auction(note->auction_id);
  if (!observed)
  {
    return;
  }

  autobid::AutoBidDecision decision = autobid::NoAction{};
  {
    std::lock_guard lock(autobids_mutex_);
    auto const      it = autobids_.find(autobid_id);
    if (it == autobids_.end() || it->second.status != AutoBidStatus::Active)
    {
      return;
    }
    Money const current = observed->current_price().value_or(note->amount);
    decision            = autobid::on_outbid(it->second, *observed, current);
    if (it->second.status == AutoBidStatus::AtMax)
    {
      emit(AutoBidChanged{AutoBidChanged::Change::AtMax, it->second, note->at});
    }
  }
  if (auto const *rebid = std::get_if<autobid::Rebid>(&decision))
  {
    propose(autobid_id, rebid->amount, note->at);
  }
}

std::vector<Auction> AuctionHouse::auctions() const
{
  std::vector<std::shared_ptr<AuctionSlot>> slots;
  {
    std::shared_lock lock(auctions_mutex_);
    for (auto const &id : auction_order_)
    {
      slots.push_back(auctions_.at(id));
    }
  }
  std::vector<Auction> out;
  out.reserve(slots.size());
  for (auto const &s : slots)
  {
    std::lock_guard lock(s->mutex);
    out.push_back(s->auction);
  }
  return out;
}

std::optional<Auction> AuctionHouse::find_auction(std::string const &id) const
{
  std::shared_ptr<AuctionSlot> s;
  {
    std::shared_lock lock(auctions_mutex_);
    auto const       it = auctions_.find(id);
    if (it == auctions_.end())
    {
      return std::nullopt;
    }
    s = it->second;
  }
  std::lock_guard lock(s->mutex);
  return s->auction;
}

std::vector<AutoBidConfig> AuctionHouse::autobids() const
{
  std::lock_guard            lock(autobids_mutex_);
  std::vector<AutoBidConfig> out;
  out.reserve(autobid_order_.size());
  for (auto const &id : autobid_order_)
  {
    out.push_back(autobids_.at(id));
  }
  return out;
}

std::optional<AutoBidConfig> AuctionHouse::find_autobid(std::string const &id) const
{
  std::lock_guard lock(autobids_mutex_);
  auto const      it = autobids_.find(id);
  if (it == autobids_.end())
  {
    return std::nullopt;
  }
  return it->second;
}

void AuctionHouse::restore_open(AuctionSpec spec)
{
  raise_counter(next_auction_, numeric_suffix(spec.id, "A-"));
  auto             created = std::make_shared<AuctionSlot>(Auction::open(spec));
  std::unique_lock lock(auctions_mutex_);
  if (!auctions_.try_emplace(spec.id, created).second)
  {
    throw auction::InvalidSpec("auction id already in use: " + spec.id);
  }
  auction_order_.push_back(spec.id);
}

void AuctionHouse::restore_bid(std::string const &auction_id, AgentId const &bidder, Money amount,
                               BidOrigin origin, Timestamp at)
{
  auto const      target = slot(auction_id);
  std::lock_guard lock(target->mutex);
  target->auction.place_bid(bidder, amount, at, origin);
}

void AuctionHouse::restore_close(std::string const &auction_id, Timestamp at)
{
  auto const target = slot(auction_id);
  {
    std::lock_guard lock(target->mutex);
    target->auction.tick(at);
  }
  retire_agents({auction_id});
}

void AuctionHouse::restore_autobid(AutoBidConfig const &config)
{
  raise_counter(next_autobid_, numeric_suffix(config.id, "AB-"));
  auto const auction = find_auction(config.auction_id);
  if (!auction)
  {
    throw UnknownAuction(config.auction_id);
  }
  bool const wants_agent =
      config.status != AutoBidStatus::Cancelled && auction->state() == auction::AuctionState::Open;

  std::lock_guard lock(autobids_mutex_);
  auto const [it, inserted] = autobids_.insert_or_assign(config.id, config);
  if (inserted)
  {
    autobid_order_.push_back(config.id);
  }
  auto const agent = agents_.find(config.id);
  if (wants_agent && agent == agents_.end())
  {
    auto const registered = register_agent(config.id);
    agents_.emplace(config.id, registered);
    agent_to_autobid_.emplace(registered.name, config.id);
  }
  else if (!wants_agent && agent != agents_.end())
  {
    agent_to_autobid_.erase(agent->second.name);
    try
    {
      platform_.ams_deregister(agent->second);
    }
    catch (acl::UnknownAgent const &)
    {
    }
    agents_.erase(agent);
  }
}

}  // namespace agora::market
