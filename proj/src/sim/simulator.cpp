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

#include "agora/sim/simulator.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <set>
#include <tuple>
#include <sstream>

#include "agora/acl/platform.hpp"
#include "agora/market/auction_house.hpp"
#include "agora/warehouse/rng.hpp"

namespace agora::sim {

using auction::AuctionOutcome;
using market::AuctionHouse;
using market::MarketEvent;

std::string TranscriptEntry::field(std::string const &key) const
{
  for (auto const &[k, v] : fields)
  {
    if (k == key)
    {
      return v;
    }
  }
  return {};
}

namespace {

std::string offset(Seconds s)
{
  return "+" + std::to_string(s.count());
}

std::string quote_if_needed(std::string const &value)
{
  if (!value.empty() && value.find_first_of(" \t\"=") == std::string::npos)
  {
    return value;
  }
  std::ostringstream out;
  out << std::quoted(value);
  return out.str();
}

}  // namespace

std::string Transcript::render() const
{
  std::string out;
  for (auto const &e : entries)
  {
    out += offset(e.at) + " " + e.kind;
    for (auto const &[k, v] : e.fields)
    {
      out += " " + k + "=" + quote_if_needed(v);
    }
    out += "\n";
  }
  for (auto const &o : outcomes)
  {
    out += "OUTCOME auction=" + quote_if_needed(o.auction_id);
    out += " winner=" + (o.winner ? quote_if_needed(o.winner->name) : std::string("none"));
    out += " price=" + (o.winning_amount ? to_string(*o.winning_amount) : std::string("none"));
    out += " closed=" + offset(o.closed_at - epoch) + "\n";
  }
  return out;
}

namespace {

struct Action
{
  enum class Type
  {
    Open,
    LiveBid,
    Join,
    RandomBid,
  };

  Seconds     at{0};
  int         phase = 1;  // opens run before actor actions at the same instant
  std::size_t order = 0;
  std::size_t seq   = 0;
  Type        type  = Type::LiveBid;
  Money       amount;
};

class Runner
{
public:
  explicit Runner(ScenarioSpec const &spec)
    : spec_(spec)
    , rng_(spec.seed)
    , house_(platform_, [this](MarketEvent const &ev) { record(ev); })
  {
    transcript_.epoch = spec.epoch;
  }

  Transcript run()
  {
    schedule();
    std::size_t next = 0;
    Timestamp const horizon = spec_.epoch + spec_.horizon;

    while (true)
    {
      std::optional<Timestamp> wake;
      auto const consider = [&](Timestamp t) {
        if (!wake || t < *wake)
        {
          wake = t;
        }
      };
      if (next < actions_.size())
      {
        consider(spec_.epoch + actions_[next].at);
      }
      for (auto const &a : house_.auctions())
      {
        if (a.state() != auction::AuctionState::Open)
        {
          continue;
        }
        auto const final_minute = a.close_time() - auction::kExtensionWindow;
        if (!a.final_minute_announced() && final_minute > now_)
        {
          consider(final_minute);
        }
        consider(a.close_time());
      }
      if (!wake)
      {
        break;
      }
      if (*wake > horizon)
      {
        throw InvalidScenario("an auction is still open at the horizon");
      }

      now_ = *wake;
      house_.tick(now_);
      while (next < actions_.size() && spec_.epoch + actions_[next].at == now_)
      {
        perform(actions_[next++]);
      }
      react();
      house_.tick(now_);
    }

    for (auto const &a : spec_.auctions)
    {
      auto const auction = house_.find_auction(a.id);
      if (!auction || !auction->outcome())
      {
        throw InvalidScenario("auction " + a.id + " never closed");
      }
      transcript_.outcomes.push_back(*auction->outcome());
    }
    return std::move(transcript_);
  }

private:
  void schedule()
  {
    for (std::size_t i = 0; i < spec_.auctions.size(); ++i)
    {
      actions_.push_back({spec_.auctions[i].open, 0, i, 0, Action::Type::Open, Money{}});
    }
    for (std::size_t i = 0; i < spec_.actors.size(); ++i)
    {
      auto const &actor = spec_.actors[i];
      if (auto const *live = std::get_if<LiveActor>(&actor.kind))
      {
        for (std::size_t k = 0; k < live->bids.size(); ++k)
        {
          actions_.push_back({live->bids[k].at, 1, i, k, Action::Type::LiveBid, live->bids[k].amount});
        }
      }
      else if (auto const *autob = std::get_if<AutoActor>(&actor.kind))
      {
        actions_.push_back({autob->join, 1, i, 0, Action::Type::Join, autob->max_amount});
      }
      else
      {
        auto const          &random = std::get<RandomActor>(actor.kind);
        std::vector<Seconds> times;
        auto const           span = static_cast<std::uint64_t>((random.to - random.from).count()) + 1;
        for (std::size_t k = 0; k < random.count; ++k)
        {
          times.push_back(random.from + Seconds{static_cast<std::int64_t>(rng_.next_below(span))});
        }
        std::sort(times.begin(), times.end());
        for (std::size_t k = 0; k < times.size(); ++k)
        {
          actions_.push_back({times[k], 1, i, k, Action::Type::RandomBid, Money{}});
        }
      }
    }
    std::sort(actions_.begin(), actions_.end(), [](Action const &x, Action const &y) {
      return std::tie(x.at, x.phase, x.order, x.seq) < std::tie(y.at, y.phase, y.order, y.seq);
    });
  }

  acl::AgentId participant(std::string const &name) const
  {
    return {name, platform_.address()};
  }

  void perform(Action const &action)
  {
    if (action.type == Action::Type::Open)
    {
      auto const &a = spec_.auctions[action.order];
      house_.open_auction({a.id, a.item_name, a.category, participant(a.seller), a.start_price,
                           a.increment, spec_.epoch + a.open, a.duration});
      return;
    }

    auto const &actor  = spec_.actors[action.order];
    auto const  bidder = participant(actor.name);
    switch (action.type)
    {
    case Action::Type::LiveBid:
      bid(actor.auction_id, bidder, action.amount);
      break;
    case Action::Type::RandomBid:
    {
      auto const auction = house_.find_auction(actor.auction_id);
      auto const steps   = std::get<RandomActor>(actor.kind).max_steps;
      auto const extra   = static_cast<std::int64_t>(rng_.next_below(steps + 1));
      bid(actor.auction_id, bidder, auction->required_minimum() + auction->spec().increment * extra);
      break;
    }
    case Action::Type::Join:
      try
      {
        auto const config = house_.create_autobid(actor.auction_id, bidder, action.amount, now_);
        autobid_of_[actor.name] = config.id;
      }
      catch (Error const &ex)
      {
        add(now_, "AUTOBID_REFUSED", {{"owner", actor.name}, {"auction", actor.auction_id},
                                      {"reason", ex.what()}});
      }
      break;
    case Action::Type::Open:
      break;
    }
  }

  void bid(std::string const &auction_id, acl::AgentId const &bidder, Money amount)
  {
    try
    {
      house_.place_bid(auction_id, bidder, amount, now_);
    }
    catch (auction::BidRejected const &)
    {
      // already on the transcript
    }
  }

  /// Owners answer AT_MAX notices, in the order they arrived, until none are left.
  void react()
  {
    while (!at_max_.empty())
    {
      auto const owner = at_max_.front();
      at_max_.erase(at_max_.begin());
      auto const actor = std::find_if(spec_.actors.begin(), spec_.actors.end(),
                                      [&](ActorSpec const &a) { return a.name == owner; });
      if (actor == spec_.actors.end())
      {
        continue;
      }
      auto const *autob = std::get_if<AutoActor>(&actor->kind);
      auto const  id    = autobid_of_.find(owner);
      if (autob == nullptr || id == autobid_of_.end())
      {
        continue;
      }
      try
      {
        if (autob->at_max.kind == AtMaxPolicy::Kind::Cancel)
        {
          house_.cancel_autobid(id->second, now_);
        }
        else if (autob->at_max.kind == AtMaxPolicy::Kind::Raise && !raised_.contains(owner))
        {
          raised_.insert(owner);
          house_.raise_max(id->second, autob->at_max.raise_to, now_);
        }
      }
      catch (Error const &ex)
      {
        add(now_, "AUTOBID_REFUSED", {{"owner", owner}, {"reason", ex.what()}});
      }
    }
  }

  void add(Timestamp at, std::string kind, std::vector<std::pair<std::string, std::string>> fields)
  {
    transcript_.entries.push_back({at - spec_.epoch, std::move(kind), std::move(fields)});
  }

  std::string rel(Timestamp t) const
  {
    return offset(t - spec_.epoch);
  }

  void record(MarketEvent const &event)
  {
    std::visit(
        [this](auto const &e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, market::AuctionOpened>)
          {
            add(e.spec.open_time, "OPENED",
                {{"auction", e.spec.id}, {"item", e.spec.item_name},
                 {"start", to_string(e.spec.start_price)}, {"increment", to_string(e.spec.increment)},
                 {"close", rel(e.close_time)}});
          }
          else if constexpr (std::is_same_v<T, market::BidAccepted>)
          {
            add(e.bid.timestamp, "BID",
                {{"auction", e.bid.auction_id}, {"bidder", e.bid.bidder.name},
                 {"amount", to_string(e.bid.amount)},
                 {"origin", std::string(auction::to_string(e.bid.origin))}});
          }
          else if constexpr (std::is_same_v<T, market::BidRefused>)
          {
            std::vector<std::pair<std::string, std::string>> fields{
                {"auction", e.auction_id},
                {"bidder", e.bidder.name},
                {"amount", to_string(e.amount)},
                {"origin", std::string(auction::to_string(e.origin))},
                {"reason", std::string(auction::to_string(e.reason))}};
            if (e.required_minimum)
            {
              fields.emplace_back("minimum", to_string(*e.required_minimum));
            }
            add(e.at, "REJECTED", std::move(fields));
          }
          else if constexpr (std::is_same_v<T, auction::Extended>)
          {
            add(e.at, "EXTENDED",
                {{"auction", e.auction_id}, {"from", rel(e.previous_close)}, {"to", rel(e.new_close)}});
          }
          else if constexpr (std::is_same_v<T, auction::EnteredFinalMinute>)
          {
            add(e.at, "FINAL_MINUTE", {{"auction", e.auction_id}});
          }
          else if constexpr (std::is_same_v<T, auction::Closed>)
          {
            auto const &o = e.outcome;
            add(o.closed_at, "CLOSED",
                {{"auction", o.auction_id},
                 {"winner", o.winner ? o.winner->name : std::string("none")},
                 {"price", o.winning_amount ? to_string(*o.winning_amount) : std::string("none")}});
          }
          else if constexpr (std::is_same_v<T, market::AutoBidChanged>)
          {
            static constexpr char const *kKinds[] = {"AUTOBID_CREATED", "AUTOBID_AT_MAX",
                                                     "AUTOBID_RAISED", "AUTOBID_CANCELLED"};
            add(e.at, kKinds[static_cast<int>(e.change)],
                {{"id", e.config.id}, {"auction", e.config.auction_id}, {"owner", e.config.owner.name},
                 {"max", to_string(e.config.max_amount)}});
            if (e.change == market::AutoBidChanged::Change::AtMax)
            {
              at_max_.push_back(e.config.owner.name);
            }
          }
        },
        event);
  }

  ScenarioSpec const                &spec_;
  warehouse::SeededRng               rng_;
  acl::Platform                      platform_;
  AuctionHouse                       house_;
  Transcript                         transcript_;
  std::vector<Action>                actions_;
  Timestamp                          now_ = Timestamp::min();
  std::map<std::string, std::string> autobid_of_;
  std::vector<std::string>           at_max_;
  std::set<std::string>              raised_;
};

}  // namespace

Transcript run_scenario(ScenarioSpec const &spec)
{
  validate(spec);
  Runner runner(spec);
  return runner.run();
}

}  // namespace agora::sim
