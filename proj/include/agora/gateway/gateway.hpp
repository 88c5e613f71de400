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

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agora/acl/platform.hpp"
#include "agora/advisor/advisor.hpp"
#include "agora/gateway/config.hpp"
#include "agora/gateway/event_log.hpp"
#include "agora/ingest/feed.hpp"
#include "agora/market/auction_house.hpp"
#include "agora/warehouse/warehouse.hpp"

namespace agora::gateway {

class GatewayError : public Error
{
public:
  using Error::Error;
};

class Unauthorized : public GatewayError
{
public:
  using GatewayError::GatewayError;
};

class Forbidden : public GatewayError
{
public:
  using GatewayError::GatewayError;
};

class BadRequest : public GatewayError
{
public:
  using GatewayError::GatewayError;
};

/// Nobody offers the advice service in the DF.
class NoAdvisor : public GatewayError
{
public:
  NoAdvisor()
    : GatewayError("no agent offers " + std::string(advisor::kAdviceService))
  {}
};

class AdvisorRefused : public GatewayError
{
public:
  explicit AdvisorRefused(ingest::AdviceRefusal refusal)
    : GatewayError("advisor refused: " + refusal.reason + " (sample size " +
                   std::to_string(refusal.sample_size) + ")")
    , refusal_(std::move(refusal))
  {}

  ingest::AdviceRefusal const &refusal() const noexcept
  {
    return refusal_;
  }
  std::size_t sample_size() const noexcept
  {
    return refusal_.sample_size;
  }

private:
  ingest::AdviceRefusal refusal_;
};

/// The advisor answered with FAILURE.
class AdviceFailed : public GatewayError
{
public:
  using GatewayError::GatewayError;
};

struct OpenAuctionRequest
{
  std::string              item_name;
  std::string              category;
  Money                    start_price;
  Money                    increment{1};
  Seconds                  duration{0};
  std::optional<Timestamp> open_time;
};

/// Site name given to warehouse records of auctions closed on this server.
inline constexpr std::string_view kLocalSite = "agora";

/**
 * The server side: binds the auction house, warehouse and advisor to one platform, records
 * every state change in the event log and rebuilds itself from that log on start.
 *
 * Time comes from the injected clock. Open auctions are advanced to "now" before every
 * operation, so closures also surface lazily.
 */
class Gateway
{
public:
  using Clock = std::function<Timestamp()>;

  /// Persists to config.data_dir/events.log, replaying whatever is there.
  explicit Gateway(Config config, Clock clock = wall_clock_now);

  struct InMemory
  {
  };
  /// No file at all; for tests and one-shot CLI reports.
  Gateway(InMemory, Config config, Clock clock = wall_clock_now);

  ~Gateway();

  Gateway(Gateway const &)            = delete;
  Gateway &operator=(Gateway const &) = delete;

  static std::filesystem::path log_path(Config const &config);

  // Sessions: a bearer token per named participant.
  std::string  start_session(std::string const &participant);
  acl::AgentId authenticate(std::string const &token) const;

  // Commands. Engine and auto-bid errors propagate unchanged after being recorded.
  Json open_auction(std::string const &token, OpenAuctionRequest const &request);
  Json place_bid(std::string const &token, std::string const &auction_id, Money amount);
  Json create_autobid(std::string const &token, std::string const &auction_id, Money max_amount);
  Json raise_max(std::string const &token, std::string const &autobid_id, Money new_max);
  Json cancel_autobid(std::string const &token, std::string const &autobid_id);

  /// Advice for a live auction, built from its current state.
  advisor::AdviceResponse get_advice(std::string const &auction_id);
  /// Advice for a caller-supplied request.
  advisor::AdviceResponse get_advice(advisor::AdviceRequest const &request);

  /// Feed document into the warehouse. Throws ingest::xml::MalformedDocument.
  ingest::LoadSummary import_feed(std::string_view document);

  /// Advances every auction to the clock.
  void tick();

  // Reads.
  Json list_auctions();
  Json auction_detail(std::string const &auction_id);
  Json list_autobids();
  Json stats_report(warehouse::RecordSelector const &selector);
  Json prediction_report(warehouse::RecordSelector const &selector,
                         std::optional<std::uint64_t> seed = std::nullopt);

  std::vector<Event> events_since(std::uint64_t after) const;
  bool               wait_for_events(std::uint64_t after, std::chrono::milliseconds timeout) const;
  std::uint64_t      last_sequence() const;
  std::size_t        truncated_on_open() const;

  Config const &config() const noexcept
  {
    return config_;
  }
  Timestamp now() const
  {
    return clock_();
  }
  acl::Platform &platform() noexcept
  {
    return platform_;
  }
  warehouse::Warehouse const &warehouse() const noexcept
  {
    return warehouse_;
  }
  acl::AgentId const &advisor_id() const noexcept
  {
    return advisor_id_;
  }

private:
  struct AuctionInfo
  {
    std::string  item_name;
    std::string  category;
    std::int64_t num_bids = 0;
  };

  Gateway(Config config, Clock clock, std::unique_ptr<EventLog> log);

  acl::AgentId participant(std::string const &name) const;
  void         replay();
  void         on_market_event(market::MarketEvent const &event);
  void         note_closed(auction::AuctionOutcome const &outcome);
  Json         autobid_json(autobid::AutoBidConfig const &config) const;
  Json         auction_json(auction::Auction const &auction, bool with_bids) const;
  advisor::AdviceResponse run_advice(advisor::AdviceRequest const &request,
                                     std::string const       &auction_id);
  void                    owns(acl::AgentId const &who, std::string const &autobid_id) const;

  Config                    config_;
  Clock                     clock_;
  std::unique_ptr<EventLog> log_;
  acl::Platform             platform_;
  warehouse::Warehouse      warehouse_;
  advisor::Advisor          advisor_;
  acl::AgentId              advisor_id_;
  acl::AgentId              requester_;

  mutable std::mutex                 info_mutex_;
  std::map<std::string, AuctionInfo> info_;

  mutable std::mutex                  sessions_mutex_;
  std::map<std::string, acl::AgentId> sessions_;

  std::mutex import_mutex_;

  // Last: its sink refers to everything above.
  std::unique_ptr<market::AuctionHouse> house_;
};

}  // namespace agora::gateway
