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

#include "agora/gateway/http_server.hpp"

#include <atomic>
#include <condition_variable>
#include <thread>

#include <httplib.h>

#include "agora/warehouse/warehouse.hpp"

namespace agora::gateway {

namespace {

constexpr char const *kJson = "application/json";
constexpr char const *kXml  = "application/xml";

void send_json(httplib::Response &res, Json const &body, int status = 200)
{
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response &res, int status, std::string const &kind, std::string const &message,
                Json extra = Json::object())
{
  Json body;
  body["error"]   = kind;
  body["message"] = message;
  for (auto const &[k, v] : extra.items())
  {
    body[k] = v;
  }
  send_json(res, body, status);
}

std::string bearer(httplib::Request const &req)
{
  auto const header = req.get_header_value("Authorization");
  constexpr std::string_view kPrefix = "Bearer ";
  if (header.rfind(kPrefix, 0) != 0)
  {
    throw Unauthorized("missing bearer token");
  }
  return header.substr(kPrefix.size());
}

Json body_json(httplib::Request const &req)
{
  try
  {
    auto j = Json::parse(req.body.empty() ? std::string("{}") : req.body);
    if (!j.is_object())
    {
      throw BadRequest("request body must be a JSON object");
    }
    return j;
  }
  catch (Json::parse_error const &ex)
  {
    throw BadRequest(std::string("invalid JSON: ") + ex.what());
  }
}

Money money_field(Json const &j, char const *key)
{
  if (!j.contains(key) || !j.at(key).is_number_integer())
  {
    throw BadRequest(std::string(key) + " must be an integer");
  }
  auto const v = j.at(key).get<std::int64_t>();
  if (v < 0)
  {
    throw BadRequest(std::string(key) + " must not be negative");
  }
  return Money{v};
}

warehouse::RecordSelector selector_of(httplib::Request const &req)
{
  if (req.has_param("item"))
  {
    return warehouse::RecordSelector::item(req.get_param_value("item"));
  }
  if (req.has_param("category"))
  {
    return warehouse::RecordSelector::category(req.get_param_value("category"));
  }
  throw BadRequest("item or category parameter required");
}

std::uint64_t after_of(httplib::Request const &req)
{
  std::string text = req.has_param("after") ? req.get_param_value("after")
                                            : req.get_header_value("Last-Event-ID");
  if (text.empty())
  {
    return 0;
  }
  auto const v = ingest::parse_unsigned(text);
  if (!v)
  {
    throw BadRequest("after must be a sequence number");
  }
  return static_cast<std::uint64_t>(*v);
}

Json events_json(std::vector<Event> const &events)
{
  Json out = Json::array();
  for (auto const &e : events)
  {
    out.push_back(to_json(e));
  }
  return out;
}

Json issues_json(std::vector<ingest::ParseIssue> const &issues)
{
  Json out = Json::array();
  for (auto const &i : issues)
  {
    Json j;
    j["line"]   = i.line;
    j["path"]   = i.path;
    j["kind"]   = ingest::to_string(i.kind);
    j["detail"] = i.detail;
    out.push_back(std::move(j));
  }
  return out;
}

/// Runs `fn`, translating gateway and engine errors into HTTP statuses.
template <typename Fn>
void guarded(httplib::Response &res, Fn &&fn)
{
  try
  {
    fn();
  }
  catch (Unauthorized const &ex)
  {
    send_error(res, 401, "Unauthorized", ex.what());
  }
  catch (Forbidden const &ex)
  {
    send_error(res, 403, "Forbidden", ex.what());
  }
  catch (BadRequest const &ex)
  {
    send_error(res, 400, "BadRequest", ex.what());
  }
  catch (market::UnknownAuction const &ex)
  {
    send_error(res, 404, "UnknownAuction", ex.what());
  }
  catch (market::UnknownAutobid const &ex)
  {
    send_error(res, 404, "UnknownAutobid", ex.what());
  }
  catch (auction::BidTooLow const &ex)
  {
    send_error(res, 409, "BidTooLow", ex.what(), {{"required_minimum", ex.required_minimum().minor()}});
  }
  catch (auction::BidRejected const &ex)
  {
    send_error(res, 409, std::string(auction::to_string(ex.reason())), ex.what());
  }
  catch (auction::InvalidSpec const &ex)
  {
    send_error(res, 400, "InvalidSpec", ex.what());
  }
  catch (market::DuplicateAutobid const &ex)
  {
    send_error(res, 409, "DuplicateAutobid", ex.what());
  }
  catch (autobid::AutoBidError const &ex)
  {
    send_error(res, 409, "AutoBidError", ex.what());
  }
  catch (warehouse::InsufficientHistory const &ex)
  {
    send_error(res, 404, "InsufficientHistory", ex.what(), {{"sample_size", ex.sample_size()}});
  }
  catch (warehouse::NoData const &ex)
  {
    send_error(res, 404, "NoData", ex.what());
  }
  catch (NoAdvisor const &ex)
  {
    send_error(res, 503, "NoAdvisor", ex.what());
  }
  catch (AdvisorRefused const &ex)
  {
    res.status = 422;
    res.set_content(ingest::serialize_advice_refusal(ex.refusal()), kXml);
  }
  catch (ingest::ParseError const &ex)
  {
    send_error(res, 400, "ParseError", ex.what(), {{"issues", issues_json(ex.issues())}});
  }
  catch (ingest::xml::MalformedDocument const &ex)
  {
    send_error(res, 400, "MalformedDocument", ex.what());
  }
  catch (Error const &ex)
  {
    send_error(res, 500, "Error", ex.what());
  }
}

}  // namespace

struct HttpServer::Impl
{
  Gateway                &gateway;
  std::chrono::milliseconds tick_interval;
  httplib::Server         server;
  std::atomic<bool>       running{false};
  std::mutex              mutex;
  std::condition_variable stopped;

  void routes();
};

void HttpServer::Impl::routes()
{
  using httplib::Request;
  using httplib::Response;
  Gateway &g = gateway;

  server.Post("/session", [&g](Request const &req, Response &res) {
    guarded(res, [&] {
      auto const body = body_json(req);
      if (!body.contains("participant") || !body.at("participant").is_string())
      {
        throw BadRequest("participant must be a string");
      }
      send_json(res, Json{{"token", g.start_session(body.at("participant").get<std::string>())}});
    });
  });

  server.Get("/auctions", [&g](Request const &, Response &res) {
    guarded(res, [&] { send_json(res, g.list_auctions()); });
  });

  server.Post("/auctions", [&g](Request const &req, Response &res) {
    guarded(res, [&] {
      auto const         body = body_json(req);
      OpenAuctionRequest r;
      r.item_name   = body.value("item_name", std::string{});
      r.category    = body.value("category", std::string{});
      r.start_price = money_field(body, "start_price");
      r.increment   = body.contains("increment") ? money_field(body, "increment") : Money{1};
      r.duration    = Seconds{money_field(body, "duration").minor()};
      send_json(res, g.open_auction(bearer(req), r), 201);
    });
  });

  server.Get(R"(/auctions/([^/]+))", [&g](Request const &req, Response &res) {
    guarded(res, [&] { send_json(res, g.auction_detail(req.matches[1])); });
  });

  server.Post(R"(/auctions/([^/]+)/bids)", [&g](Request const &req, Response &res) {
    guarded(res, [&] {
      auto const body = body_json(req);
      send_json(res, g.place_bid(bearer(req), req.matches[1], money_field(body, "amount")));
    });
  });

  server.Get(R"(/auctions/([^/]+)/advice)", [&g](Request const &req, Response &res) {
    guarded(res, [&] {
      res.set_content(ingest::serialize_advice_response(g.get_advice(std::string(req.matches[1]))), kXml);
    });
  });

  server.Post("/advice", [&g](Request const &req, Response &res) {
    guarded(res, [&] {
      auto const request = ingest::parse_advice_request(req.body);
      res.set_content(ingest::serialize_advice_response(g.get_advice(request)), kXml);
    });
  });

  server.Get("/autobids", [&g](Request const &, Response &res) {
    guarded(res, [&] { send_json(res, g.list_autobids()); });
  });

  server.Post(R"(/auctions/([^/]+)/autobids)", [&g](Request const &req, Response &res) {
    guarded(res, [&] {
      auto const body = body_json(req);
      send_json(res, g.create_autobid(bearer(req), req.matches[1], money_field(body, "max_amount")), 201);
    });
  });

  server.Post(R"(/autobids/([^/]+)/raise)", [&g](Request const &req, Response &res) {
    guarded(res, [&] {
      auto const body = body_json(req);
      send_json(res, g.raise_max(bearer(req), req.matches[1], money_field(body, "max_amount")));
    });
  });

  server.Post(R"(/autobids/([^/]+)/cancel)", [&g](Request const &req, Response &res) {
    guarded(res, [&] { send_json(res, g.cancel_autobid(bearer(req), req.matches[1])); });
  });

  server.Post("/feed", [&g](Request const &req, Response &res) {
    guarded(res, [&] {
      auto const summary = g.import_feed(req.body);
      Json       j;
      j["parsed"]     = summary.parsed;
      j["loaded"]     = summary.loaded;
      j["duplicates"] = summary.duplicates;
      j["issues"]     = issues_json(summary.issues);
      send_json(res, j);
    });
  });

  server.Get("/reports/stats", [&g](Request const &req, Response &res) {
    guarded(res, [&] { send_json(res, g.stats_report(selector_of(req))); });
  });

  server.Get("/reports/prediction", [&g](Request const &req, Response &res) {
    guarded(res, [&] {
      std::optional<std::uint64_t> seed;
      if (req.has_param("seed"))
      {
        auto const v = ingest::parse_unsigned(req.get_param_value("seed"));
        if (!v)
        {
          throw BadRequest("seed must be a non-negative integer");
        }
        seed = static_cast<std::uint64_t>(*v);
      }
      send_json(res, g.prediction_report(selector_of(req), seed));
    });
  });

  server.Get("/events", [&g](Request const &req, Response &res) {
    guarded(res, [&] { send_json(res, events_json(g.events_since(after_of(req)))); });
  });

  server.Get("/events/stream", [this, &g](Request const &req, Response &res) {
    guarded(res, [&] {
      auto cursor = std::make_shared<std::uint64_t>(after_of(req));
      res.set_header("Cache-Control", "no-cache");
      res.set_chunked_content_provider(
          "text/event-stream", [this, &g, cursor](std::size_t, httplib::DataSink &sink) {
            if (!running)
            {
              return false;
            }
            g.wait_for_events(*cursor, std::chrono::milliseconds{500});
            for (auto const &e : g.events_since(*cursor))
            {
              std::string chunk = "id: " + std::to_string(e.sequence) + "\nevent: " +
                                  std::string(to_string(e.kind)) + "\ndata: " + encode(e) + "\n\n";
              if (!sink.write(chunk.data(), chunk.size()))
              {
                return false;
              }
              *cursor = e.sequence;
            }
            return sink.is_writable();
          });
    });
  });
}

HttpServer::HttpServer(Gateway &gateway, std::chrono::milliseconds tick_interval)
  : impl_(std::make_unique<Impl>(gateway, tick_interval))
{
  impl_->routes();
}

HttpServer::~HttpServer()
{
  stop();
}

int HttpServer::bind(std::string const &host, int port)
{
  if (port == 0)
  {
    return impl_->server.bind_to_any_port(host);
  }
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen()
{
  impl_->running = true;
  std::thread ticker([this] {
    std::unique_lock lock(impl_->mutex);
    while (impl_->running)
    {
      impl_->stopped.wait_for(lock, impl_->tick_interval);
      if (impl_->running)
      {
        lock.unlock();
        try
        {
          impl_->gateway.tick();
        }
        catch (Error const &)
        {
        }
        lock.lock();
      }
    }
  });
  bool const ok = impl_->server.listen_after_bind();
  {
    std::lock_guard lock(impl_->mutex);
    impl_->running = false;
  }
  impl_->stopped.notify_all();
  ticker.join();
  return ok;
}

void HttpServer::wait_until_ready() const
{
  impl_->server.wait_until_ready();
}

void HttpServer::stop()
{
  {
    std::lock_guard lock(impl_->mutex);
    impl_->running = false;
  }
  impl_->stopped.notify_all();
  impl_->server.stop();
}

}  // namespace agora::gateway
