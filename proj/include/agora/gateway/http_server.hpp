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
#include <memory>
#include <string>

#include "agora/gateway/gateway.hpp"

namespace agora::gateway {

/**
 * HTTP binding of the gateway. JSON bodies except for advice, which speaks the advice XML
 * documents. Authenticated calls carry "Authorization: Bearer <token>".
 *
 *   POST /session                        {"participant": name} -> {"token"}
 *   GET  /auctions                       list
 *   POST /auctions                       {"item_name","category","start_price","increment","duration"}
 *   GET  /auctions/{id}                  detail with bids
 *   POST /auctions/{id}/bids             {"amount"}
 *   GET  /auctions/{id}/advice           advice-response XML
 *   POST /advice                         advice-request XML -> advice-response XML
 *   GET  /autobids                       list
 *   POST /auctions/{id}/autobids         {"max_amount"}
 *   POST /autobids/{id}/raise            {"max_amount"}
 *   POST /autobids/{id}/cancel
 *   POST /feed                           auction-feed XML -> load summary
 *   GET  /reports/stats?item=|category=
 *   GET  /reports/prediction?item=|category=[&seed=]
 *   GET  /events?after=N                 JSON array of events with sequence > N
 *   GET  /events/stream?after=N          server-sent events, resumable via Last-Event-ID
 */
class HttpServer
{
public:
  explicit HttpServer(Gateway &gateway, std::chrono::milliseconds tick_interval = std::chrono::seconds{1});
  ~HttpServer();

  HttpServer(HttpServer const &)            = delete;
  HttpServer &operator=(HttpServer const &) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port, or -1.
  int bind(std::string const &host, int port);

  /// Serves until stop(). Also ticks the gateway periodically so closures reach the stream.
  bool listen();

  /// Blocks until listen() accepts connections.
  void wait_until_ready() const;

  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace agora::gateway
