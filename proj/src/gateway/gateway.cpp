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

#include "agora/gateway/gateway.hpp"

#include <algorithm>
#include <random>

#include "agora/acl/request_protocol.hpp"

namespace agora::gateway {

using acl::AgentId;
using auction::Auction;
using autobid::AutoBidConfig;
using warehouse::ClosedAuctionRecord;

namespace {

constexpr std::string_view kRequesterName = "gateway";

std::string iso(Timestamp t)
{
  return format_iso8601(t);
}

Timestamp time_field(Json const &j, char const *key)
{
  auto const t = parse_iso8601(j.at(key).get<std::string>());
  if (!t)
  {
    throw BadEvent(std::string("bad timestamp in ") + key);
  }
  return *t;
}

Json record_json(ClosedAuctionRecord const &rec)
{
  Json j;
  j["site"]         = rec.site;
  j["item_code"]    = rec.item_code ? Json(*rec.item_code) : Json(nullptr);
  j["item_name"]    = rec.item_name;
  j["category"]     = rec.category;
  j["closed_price"] = rec.closed_price.minor();
  j["num_bids"]     = rec.num_bids;
  j["close_time"]   = iso(rec.close_time);
  j["quantity"]     = rec.quantity;
  return j;
}

ClosedAuctionRecord record_from_json(Json const &j)
{
  ClosedAuctionRecord rec;
  rec.site = j.at("site").get<std::string>();
  if (!j.at("item_code").is_null())
  {
    rec.item_code = j.at("item_code").get<std::string>();
  }
  rec.item_name    = j.at("item_name").get<std::string>();
  rec.category     = j.at("category").get<std::string>();
  rec.closed_price = Money{j.at("closed_price").get<std::int64_t>()};
  rec.num_bids     = j.at("num_bids").get<std::int64_t>();
  rec.close_time   = time_field(j, "close_time");
  rec.quantity     = j.at("quantity").get<std::int64_t>();
  return rec;
}

std::string random_token()
{
  static thread_local std::mt19937_64 engine{std::random_device{}()};
  static constexpr char               kHex[] = "0123456789abcdef";
  std::string                         token;
  for (int i = 0; i < 32; ++i)
  {
    token += kHex[engine() % 16];
  }
  return token;
}

}  // namespace

std::filesystem::path Gateway::log_path(Config const &config)
{
  return config.data_dir / "events.log";
}

namespace {

std::unique_ptr<EventLog> open_log(Config const &config)
{
  std::filesystem::create_directories(config.data_dir);
  return std::make_unique<EventLog>(Gateway::log_path(config));
}

}  // namespace

Gateway::Gateway(Config config, Clock clock)
  : Gateway(config, std::move(clock), open_log(config))
{}

Gateway::Gateway(InMemory, Config config, Clock clock)
  : Gateway(std::move(config), std::move(clock), std::make_unique<EventLog>())
{}

Gateway::Gateway(Config config, Clock clock, std::unique_ptr<EventLog> log)
  : config_(std::move(config))
  , clock_(std::move(clock))
  , log_(std::move(log))
  , advisor_(warehouse_,
             advisor::AdvisorConfig{Seconds{config_.lookback_days * 24 * 3600},
                                    static_cast<std::size_t>(config_.min_history)},
             clock_)
{
  validate(config_);
  advisor_id_ = advisor_.attach(platform_);
  requester_  = platform_.ams_register(kRequesterName);
  house_      = std::make_unique<market::AuctionHouse>(
      platform_, [this](market::MarketEvent const &ev) { on_market_event(ev); });
  replay();
}

Gateway::~Gateway()
{
  house_.reset();
  if (platform_.is_registered(advisor_id_))
  {
    platform_.ams_deregister(advisor_id_);
  }
}

AgentId Gateway::participant(std::string const &name) const
{
  return {name, platform_.address()};
}

std::string Gateway::start_session(std::string const &participant_name)
{
  if (participant_name.empty())
  {
    throw BadRequest("participant name must not be empty");
  }
  auto            token = random_token();
  std::lock_guard lock(sessions_mutex_);
  sessions_.emplace(token, participant(participant_name));
  return token;
}

AgentId Gateway::authenticate(std::string const &token) const
{
  std::lock_guard lock(sessions_mutex_);
  auto const      it = sessions_.find(token);
  if (it == sessions_.end())
  {
    throw Unauthorized("unknown or missing session token");
  }
  return it->second;
}

void Gateway::tick()
{
  house_->tick(clock_());
}

// ---- events -------------------------------------------------------------

void Gateway::note_closed(auction::AuctionOutcome const &outcome)
{
  if (!outcome.winner || !outcome.winning_amount)
  {
    return;
  }
  AuctionInfo info;
  {
    std::lock_guard lock(info_mutex_);
    info = info_.at(outcome.auction_id);
  }
  ClosedAuctionRecord rec;
  rec.site         = std::string(kLocalSite);
  rec.item_name    = info.item_name;
  rec.category     = info.category;
  rec.closed_price = *outcome.winning_amount;
  rec.num_bids     = info.num_bids;
  rec.close_time   = outcome.closed_at;
  try
  {
    warehouse_.add_record(rec);
  }
  catch (warehouse::InvalidRecord const &)
  {
    // e.g. an empty item name; the auction still closed
  }
}

Json Gateway::autobid_json(AutoBidConfig const &config) const
{
  Json j;
  j["id"]         = config.id;
  j["auction_id"] = config.auction_id;
  j["owner"]      = config.owner.name;
  j["max_amount"] = config.max_amount.minor();
  j["status"]     = autobid::to_string(config.status);
  return j;
}

void Gateway::on_market_event(market::MarketEvent const &event)
{
  std::visit(
      [this](auto const &e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, market::AuctionOpened>)
        {
          {
            std::lock_guard lock(info_mutex_);
            info_[e.spec.id] = {e.spec.item_name, e.spec.category, 0};
          }
          Json p;
          p["item_name"]   = e.spec.item_name;
          p["category"]    = e.spec.category;
          p["seller"]      = e.spec.seller.name;
          p["start_price"] = e.spec.start_price.minor();
          p["increment"]   = e.spec.increment.minor();
          p["open_time"]   = iso(e.spec.open_time);
          p["duration"]    = e.spec.duration.count();
          p["close_time"]  = iso(e.close_time);
          log_->append(EventKind::AuctionOpened, e.spec.open_time, e.spec.id, std::move(p));
        }
        else if constexpr (std::is_same_v<T, market::BidAccepted>)
        {
          {
            std::lock_guard lock(info_mutex_);
            ++info_[e.bid.auction_id].num_bids;
          }
          Json p;
          p["bidder"]        = e.bid.bidder.name;
          p["amount"]        = e.bid.amount.minor();
          p["origin"]        = auction::to_string(e.bid.origin);
          p["required_next"] = e.required_next.minor();
          log_->append(EventKind::BidAccepted, e.bid.timestamp, e.bid.auction_id, std::move(p));
        }
        else if constexpr (std::is_same_v<T, market::BidRefused>)
        {
          Json p;
          p["bidder"] = e.bidder.name;
          p["amount"] = e.amount.minor();
          p["origin"] = auction::to_string(e.origin);
          p["reason"] = auction::to_string(e.reason);
          p["required_minimum"] =
              e.required_minimum ? Json(e.required_minimum->minor()) : Json(nullptr);
          log_->append(EventKind::BidRejected, e.at, e.auction_id, std::move(p));
        }
        else if constexpr (std::is_same_v<T, auction::Extended>)
        {
          Json p;
          p["previous_close"] = iso(e.previous_close);
          p["new_close"]      = iso(e.new_close);
          log_->append(EventKind::Extended, e.at, e.auction_id, std::move(p));
        }
        else if constexpr (std::is_same_v<T, auction::Closed>)
        {
          auto const &o = e.outcome;
          Json        p;
          p["winner"]    = o.winner ? Json(o.winner->name) : Json(nullptr);
          p["amount"]    = o.winning_amount ? Json(o.winning_amount->minor()) : Json(nullptr);
          p["closed_at"] = iso(o.closed_at);
          log_->append(EventKind::Closed, o.closed_at, o.auction_id, std::move(p));
          note_closed(o);
        }
        else if constexpr (std::is_same_v<T, market::AutoBidChanged>)
        {
          static constexpr EventKind kKinds[] = {EventKind::AutobidCreated, EventKind::AutobidAtMax,
                                                 EventKind::AutobidRaised, EventKind::AutobidCancelled};
          log_->append(kKinds[static_cast<int>(e.change)], e.at, e.config.auction_id,
                       autobid_json(e.config));
        }
        // The final-minute notice is derivable from close_time and is not recorded.
      },
      event);
}

void Gateway::replay()
{
  for (auto const &ev : log_->events())
  {
    try
    {
      auto const &p = ev.payload;
      switch (ev.kind)
      {
      case EventKind::AuctionOpened:
      {
        auction::AuctionSpec spec;
        spec.id          = ev.auction_id;
        spec.item_name   = p.at("item_name").get<std::string>();
        spec.category    = p.at("category").get<std::string>();
        spec.seller      = participant(p.at("seller").get<std::string>());
        spec.start_price = Money{p.at("start_price").get<std::int64_t>()};
        spec.increment   = Money{p.at("increment").get<std::int64_t>()};
        spec.open_time   = time_field(p, "open_time");
        spec.duration    = Seconds{p.at("duration").get<std::int64_t>()};
        house_->restore_open(spec);
        std::lock_guard lock(info_mutex_);
        info_[spec.id] = {spec.item_name, spec.category, 0};
        break;
      }
      case EventKind::BidAccepted:
      {
        auto const origin = auction::parse_bid_origin(p.at("origin").get<std::string>());
        if (!origin)
        {
          throw BadEvent("bad bid origin");
        }
        house_->restore_bid(ev.auction_id, participant(p.at("bidder").get<std::string>()),
                            Money{p.at("amount").get<std::int64_t>()}, *origin, ev.time);
        std::lock_guard lock(info_mutex_);
        ++info_[ev.auction_id].num_bids;
        break;
      }
      case EventKind::Closed:
      {
        house_->restore_close(ev.auction_id, ev.time);
        note_closed(*house_->find_auction(ev.auction_id)->outcome());
        break;
      }
      case EventKind::AutobidCreated:
      case EventKind::AutobidAtMax:
      case EventKind::AutobidRaised:
      case EventKind::AutobidCancelled:
      {
        auto const status = autobid::parse_autobid_status(p.at("status").get<std::string>());
        if (!status)
        {
          throw BadEvent("bad auto-bid status");
        }
        house_->restore_autobid({p.at("id").get<std::string>(), ev.auction_id,
                                 participant(p.at("owner").get<std::string>()),
                                 Money{p.at("max_amount").get<std::int64_t>()}, *status});
        break;
      }
      case EventKind::RecordsLoaded:
      {
        std::vector<ClosedAuctionRecord> records;
        for (auto const &r : p.at("records"))
        {
          records.push_back(record_from_json(r));
        }
        warehouse_.add_records(records);
        break;
      }
      case EventKind::BidRejected:
      case EventKind::Extended:
      case EventKind::AdviceServed:
        break;
      }
    }
    catch (Json::exception const &ex)
    {
      throw CorruptLog(ev.sequence, ex.what());
    }
    catch (BadEvent const &ex)
    {
      throw CorruptLog(ev.sequence, ex.what());
    }
    catch (Error const &ex)
    {
      throw CorruptLog(ev.sequence, std::string("cannot be applied: ") + ex.what());
    }
  }
}

// ---- commands ------------------------------------------------------------

Json Gateway::open_auction(std::string const &token, OpenAuctionRequest const &request)
{
  auto const seller = authenticate(token);
  auto const now    = clock_();
  house_->tick(now);
  auction::AuctionSpec spec{"",
                            request.item_name,
                            request.category,
                            seller,
                            request.start_price,
                            request.increment,
                            request.open_time.value_or(now),
                            request.duration};
  if (spec.item_name.empty())
  {
    throw BadRequest("item_name must not be empty");
  }
  auto const id = house_->open_auction(spec);
  return auction_json(*house_->find_auction(id), true);
}

Json Gateway::place_bid(std::string const &token, std::string const &auction_id, Money amount)
{
  auto const bidder = authenticate(token);
  auto const now    = clock_();
  house_->tick(now);
  auto const receipt = house_->place_bid(auction_id, bidder, amount, now);
  auto const after   = house_->find_auction(auction_id);

  Json j;
  j["accepted"]   = true;
  j["auction_id"] = auction_id;
  j["bidder"]     = bidder.name;
  j["amount"]     = amount.minor();
  j["time"]       = iso(receipt.bid.timestamp);
  j["extended"]   = receipt.extension.has_value();
  j["auction"]    = auction_json(*after, false);
  return j;
}

void Gateway::owns(AgentId const &who, std::string const &autobid_id) const
{
  auto const config = house_->find_autobid(autobid_id);
  if (!config)
  {
    throw market::UnknownAutobid(autobid_id);
  }
  if (config->owner != who)
  {
    throw Forbidden(autobid_id + " belongs to " + config->owner.name);
  }
}

Json Gateway::create_autobid(std::string const &token, std::string const &auction_id,
                             Money max_amount)
{
  auto const owner = authenticate(token);
  auto const now   = clock_();
  house_->tick(now);
  auto const config = house_->create_autobid(auction_id, owner, max_amount, now);
  return autobid_json(config);
}

Json Gateway::raise_max(std::string const &token, std::string const &autobid_id, Money new_max)
{
  auto const who = authenticate(token);
  owns(who, autobid_id);
  auto const now = clock_();
  house_->tick(now);
  return autobid_json(house_->raise_max(autobid_id, new_max, now));
}

Json Gateway::cancel_autobid(std::string const &token, std::string const &autobid_id)
{
  auto const who = authenticate(token);
  owns(who, autobid_id);
  auto const now = clock_();
  house_->tick(now);
  return autobid_json(house_->cancel_autobid(autobid_id, now));
}

// ---- advice ----------------------------------------------------------------

advisor::AdviceResponse Gateway::get_advice(std::string const &auction_id)
{
  auto const now = clock_();
  house_->tick(now);
  auto const auction = house_->find_auction(auction_id);
  if (!auction)
  {
    throw market::UnknownAuction(auction_id);
  }
  if (auction->state() == auction::AuctionState::Closed)
  {
    throw auction::AuctionClosed(auction_id);
  }
  advisor::AdviceRequest request;
  request.item_name          = auction->spec().item_name;
  request.current_bid        = auction->current_price().value_or(Money{0});
  request.num_bids           = static_cast<std::int64_t>(auction->bids().size());
  request.remaining_duration = std::max(Seconds{0}, auction->close_time() - now);
  return run_advice(request, auction_id);
}

advisor::AdviceResponse Gateway::get_advice(advisor::AdviceRequest const &request)
{
  return run_advice(request, "");
}

advisor::AdviceResponse Gateway::run_advice(advisor::AdviceRequest const &request,
                                            std::string const            &auction_id)
{
  auto const providers = platform_.df_search(advisor::kAdviceService);
  if (providers.empty())
  {
    throw NoAdvisor();
  }

  acl::ProtocolOutcome outcome;
  try
  {
    outcome = acl::run_request_protocol(platform_, requester_, providers.front().provider,
                                        ingest::serialize_advice_request(request),
                                        std::chrono::milliseconds{config_.advice_timeout_ms});
  }
  catch (acl::UnknownAgent const &)
  {
    throw NoAdvisor();
  }

  auto const &terminal = outcome.terminal();
  switch (terminal.performative)
  {
  case acl::Performative::Inform:
    break;
  case acl::Performative::Refuse:
    throw AdvisorRefused(ingest::parse_advice_refusal(terminal.content));
  default:
    throw AdviceFailed("advisor failed: " + terminal.content);
  }

  auto const response = ingest::parse_advice_response(terminal.content);
  Json       p;
  p["item_name"]            = request.item_name;
  p["current_bid"]          = request.current_bid.minor();
  p["num_bids"]             = request.num_bids;
  p["remaining_duration"]   = request.remaining_duration.count();
  p["recommended_bid"]      = response.recommended_bid.minor();
  p["recommended_bid_time"] = iso(response.recommended_bid_time);
  p["should_bid"]           = response.should_bid;
  p["sample_size"]          = response.basis.sample_size;
  log_->append(EventKind::AdviceServed, clock_(), auction_id, std::move(p));
  return response;
}

// ---- warehouse --------------------------------------------------------------

ingest::LoadSummary Gateway::import_feed(std::string_view document)
{
  auto parsed = ingest::parse_feed(document);

  ingest::LoadSummary summary;
  summary.parsed = parsed.elements;
  summary.issues = std::move(parsed.issues);

  std::lock_guard lock(import_mutex_);
  auto const      outcomes = warehouse_.add_records(parsed.records);
  Json            added    = Json::array();
  for (std::size_t i = 0; i < outcomes.size(); ++i)
  {
    switch (outcomes[i].kind)
    {
    case warehouse::Warehouse::InsertOutcome::Kind::Added:
      ++summary.loaded;
      added.push_back(record_json(parsed.records[i]));
      break;
    case warehouse::Warehouse::InsertOutcome::Kind::Duplicate:
      ++summary.duplicates;
      break;
    case warehouse::Warehouse::InsertOutcome::Kind::Invalid:
      summary.issues.push_back({0, "record[" + std::to_string(i) + "]", ingest::IssueKind::Malformed,
                                outcomes[i].detail});
      break;
    }
  }
  if (!added.empty())
  {
    Json p;
    p["records"] = std::move(added);
    log_->append(EventKind::RecordsLoaded, clock_(), "", std::move(p));
  }
  return summary;
}

// ---- reads -----------------------------------------------------------------

Json Gateway::auction_json(Auction const &a, bool with_bids) const
{
  auto const &spec = a.spec();
  Json        j;
  j["id"]               = a.id();
  j["item_name"]        = spec.item_name;
  j["category"]         = spec.category;
  j["seller"]           = spec.seller.name;
  j["start_price"]      = spec.start_price.minor();
  j["increment"]        = spec.increment.minor();
  j["open_time"]        = iso(spec.open_time);
  j["close_time"]       = iso(a.close_time());
  j["extended"]         = a.close_time() != spec.open_time + spec.duration;
  j["state"]            = auction::to_string(a.state());
  j["current_bid"]      = a.current_price() ? Json(a.current_price()->minor()) : Json(nullptr);
  j["num_bids"]         = a.bids().size();
  j["required_minimum"] = a.required_minimum().minor();
  auto const winning    = a.winning_bid();
  j["leader"]           = winning ? Json(winning->bidder.name) : Json(nullptr);
  if (with_bids)
  {
    Json bids = Json::array();
    for (auto const &b : a.bids())
    {
      Json bj;
      bj["bidder"] = b.bidder.name;
      bj["amount"] = b.amount.minor();
      bj["time"]   = iso(b.timestamp);
      bj["origin"] = auction::to_string(b.origin);
      bids.push_back(std::move(bj));
    }
    j["bids"] = std::move(bids);
  }
  return j;
}

Json Gateway::list_auctions()
{
  tick();
  Json out = Json::array();
  for (auto const &a : house_->auctions())
  {
    out.push_back(auction_json(a, false));
  }
  return out;
}

Json Gateway::auction_detail(std::string const &auction_id)
{
  tick();
  auto const a = house_->find_auction(auction_id);
  if (!a)
  {
    throw market::UnknownAuction(auction_id);
  }
  return auction_json(*a, true);
}

Json Gateway::list_autobids()
{
  tick();
  Json out = Json::array();
  for (auto const &c : house_->autobids())
  {
    out.push_back(autobid_json(c));
  }
  return out;
}

namespace {

Json selector_json(warehouse::RecordSelector const &selector)
{
  Json j;
  j[selector.field == warehouse::RecordSelector::Field::ItemName ? "item" : "category"] =
      selector.value;
  return j;
}

}  // namespace

Json Gateway::stats_report(warehouse::RecordSelector const &selector)
{
  tick();
  auto const r = warehouse_.stats_report(selector);
  Json       j = selector_json(selector);
  j["min"]           = r.min.minor();
  j["median"]        = r.median.minor();
  j["max"]           = r.max.minor();
  j["quantity_sold"] = r.quantity_sold;
  j["sample_size"]   = r.sample_size;
  return j;
}

Json Gateway::prediction_report(warehouse::RecordSelector const &selector,
                                std::optional<std::uint64_t> seed)
{
  tick();
  auto const used = seed.value_or(static_cast<std::uint64_t>(config_.seed));
  auto const p    = warehouse_.market_prediction(
      selector, Seconds{config_.period_days * 24 * 3600}, clock_(), used);
  Json j = selector_json(selector);
  j["period_days"] = config_.period_days;
  j["past"]        = p.past.minor();
  j["present"]     = p.present.minor();
  j["variant1"]    = p.variant1.minor();
  j["variant2"]    = p.variant2;
  j["future"]      = p.future.minor();
  j["seed"]        = p.seed;
  return j;
}

std::vector<Event> Gateway::events_since(std::uint64_t after) const
{
  return log_->since(after);
}

bool Gateway::wait_for_events(std::uint64_t after, std::chrono::milliseconds timeout) const
{
  return log_->wait_beyond(after, timeout);
}

std::uint64_t Gateway::last_sequence() const
{
  return log_->last_sequence();
}

std::size_t Gateway::truncated_on_open() const
{
  return log_->truncated_on_open();
}

}  // namespace agora::gateway
