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

#include "agora/advisor/advisor.hpp"

#include <map>

#include "agora/ingest/feed.hpp"
#include "agora/warehouse/median.hpp"

namespace agora::advisor {

using acl::AclMessage;
using acl::Performative;
using warehouse::ClosedAuctionRecord;

namespace {

bool is_recent(ClosedAuctionRecord const &rec, Timestamp now, Seconds lookback)
{
  return rec.close_time <= now && rec.close_time >= now - lookback;
}

/// Most common category among records named `item_name`; ties go to the lexically smaller.
std::string category_of(warehouse::Snapshot const &snapshot, std::string const &item_name)
{
  std::map<std::string, std::size_t> counts;
  for (auto const &rec : *snapshot)
  {
    if (rec.item_name == item_name && !rec.category.empty())
    {
      ++counts[rec.category];
    }
  }
  std::string best;
  std::size_t best_count = 0;
  for (auto const &[category, count] : counts)
  {
    if (count > best_count)
    {
      best       = category;
      best_count = count;
    }
  }
  return best;
}

}  // namespace

HistorySample select_history(warehouse::Snapshot const &snapshot, std::string const &item_name,
                             Timestamp now, AdvisorConfig const &config)
{
  HistorySample sample;
  for (auto const &rec : *snapshot)
  {
    if (rec.item_name == item_name && is_recent(rec, now, config.lookback))
    {
      sample.records.push_back(rec);
    }
  }
  if (sample.records.size() >= config.min_history)
  {
    return sample;
  }

  std::size_t const exact_count = sample.records.size();
  std::string const category    = category_of(snapshot, item_name);
  if (category.empty())
  {
    throw warehouse::InsufficientHistory(item_name, exact_count);
  }

  HistorySample fallback;
  fallback.by_category = true;
  for (auto const &rec : *snapshot)
  {
    if (rec.category == category && is_recent(rec, now, config.lookback))
    {
      fallback.records.push_back(rec);
    }
  }
  if (fallback.records.size() < config.min_history)
  {
    throw warehouse::InsufficientHistory(category, fallback.records.size());
  }
  return fallback;
}

Money recommended_max_bid(HistorySample const &sample)
{
  std::vector<std::int64_t> prices;
  prices.reserve(sample.records.size());
  for (auto const &rec : sample.records)
  {
    prices.push_back(rec.closed_price.minor());
  }
  return Money{warehouse::median_floor(std::move(prices))};
}

namespace {

std::int64_t twice_median_bids(HistorySample const &sample)
{
  std::vector<std::int64_t> counts;
  counts.reserve(sample.records.size());
  for (auto const &rec : sample.records)
  {
    counts.push_back(rec.num_bids);
  }
  return warehouse::twice_median(std::move(counts));
}

}  // namespace

bool should_bid(std::int64_t num_bids, HistorySample const &sample)
{
  return 2 * num_bids < twice_median_bids(sample);
}

double median_num_bids(HistorySample const &sample)
{
  return static_cast<double>(twice_median_bids(sample)) / 2.0;
}

Advisor::Advisor(warehouse::Warehouse const &warehouse, AdvisorConfig config, Clock clock)
  : warehouse_(warehouse)
  , config_(config)
  , clock_(std::move(clock))
{}

AdviceResponse Advisor::advise(AdviceRequest const &request, Timestamp now) const
{
  auto const sample = select_history(warehouse_.snapshot(), request.item_name, now, config_);

  AdviceResponse resp;
  resp.recommended_bid      = recommended_max_bid(sample);
  resp.recommended_bid_time = recommended_bid_time(now + request.remaining_duration);
  resp.should_bid           = should_bid(request.num_bids, sample);
  resp.basis.sample_size    = sample.records.size();
  resp.basis.median_closed_price = resp.recommended_bid;
  resp.basis.median_num_bids     = median_num_bids(sample);
  return resp;
}

std::vector<AclMessage> Advisor::handle_advice_message(AclMessage const &msg,
                                                       acl::AgentId const &self,
                                                       Timestamp now) const
{
  if (msg.performative != Performative::Request)
  {
    return {acl::make_reply(msg, self, Performative::Failure,
                            "expected REQUEST, got " + std::string(acl::to_string(msg.performative)))};
  }

  AdviceRequest request;
  try
  {
    request = ingest::parse_advice_request(msg.content);
  }
  catch (ingest::ParseError const &ex)
  {
    return {acl::make_reply(msg, self, Performative::Failure, ex.what())};
  }

  AdviceResponse response;
  try
  {
    response = advise(request, now);
  }
  catch (warehouse::InsufficientHistory const &ex)
  {
    return {acl::make_reply(
        msg, self, Performative::Refuse,
        ingest::serialize_advice_refusal({"insufficient-history", ex.sample_size()}))};
  }

  return {acl::make_reply(msg, self, Performative::Agree, ""),
          acl::make_reply(msg, self, Performative::Inform,
                          ingest::serialize_advice_response(response))};
}

acl::AgentId Advisor::attach(acl::Platform &platform, std::string const &name) const
{
  auto const self = platform.ams_register(name);
  platform.set_behaviour(self, [this, &platform, self](AclMessage const &msg) {
    if (msg.performative == Performative::Failure)
    {
      return;
    }
    for (auto &reply : handle_advice_message(msg, self, clock_()))
    {
      platform.acc_send(std::move(reply));
    }
  });
  platform.df_register({self, std::string(kAdviceService), name});
  return self;
}

}  // namespace agora::advisor
