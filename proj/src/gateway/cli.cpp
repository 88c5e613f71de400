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

#include "agora/gateway/cli.hpp"

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "agora/gateway/gateway.hpp"
#include "agora/gateway/http_server.hpp"
#include "agora/sim/simulator.hpp"

namespace agora::gateway {

namespace {

/// Thrown for bad input data (as opposed to bad command-line usage).
class DataError : public Error
{
public:
  using Error::Error;
};

std::string read_file(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw DataError("cannot read " + path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

struct CommonOptions
{
  std::string config_file;
  std::string data_dir;

  Config load() const
  {
    std::optional<std::filesystem::path> file;
    if (!config_file.empty())
    {
      file = config_file;
    }
    Config config = load_config(file);
    if (!data_dir.empty())
    {
      config.data_dir = data_dir;
    }
    return config;
  }
};

void add_common(CLI::App *cmd, CommonOptions &opts)
{
  cmd->add_option("--config", opts.config_file, "key=value config file");
  cmd->add_option("--data-dir", opts.data_dir, "directory holding the event log");
}

HttpServer *g_server = nullptr;

extern "C" void on_signal(int)
{
  if (g_server != nullptr)
  {
    g_server->stop();
  }
}

int run_serve(CommonOptions const &opts, std::string const &host, int port_override, std::ostream &out,
              std::ostream &err)
{
  auto config = opts.load();
  if (port_override > 0)
  {
    config.port = port_override;
  }
  Gateway    gateway(config);
  HttpServer server(gateway);
  if (server.bind(host, static_cast<int>(config.port)) < 0)
  {
    err << "cannot bind " << host << ":" << config.port << "\n";
    return kExitDataError;
  }
  if (gateway.truncated_on_open() > 0)
  {
    err << "event log: dropped " << gateway.truncated_on_open() << " truncated line\n";
  }
  out << "listening on " << host << ":" << config.port << " (" << gateway.last_sequence()
      << " events replayed)" << std::endl;
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  bool const ok = server.listen();
  g_server      = nullptr;
  return ok ? kExitOk : kExitDataError;
}

void print_issues(std::vector<ingest::ParseIssue> const &issues, std::ostream &err)
{
  for (auto const &i : issues)
  {
    err << "issue line " << i.line << " " << i.path << " " << ingest::to_string(i.kind) << ": "
        << i.detail << "\n";
  }
}

int run_import(CommonOptions const &opts, std::string const &file, std::ostream &out, std::ostream &err)
{
  auto const document = read_file(file);
  Gateway    gateway(opts.load());
  auto const summary = gateway.import_feed(document);
  out << "loaded " << summary.loaded << ", duplicates " << summary.duplicates << "\n";
  print_issues(summary.issues, err);
  return kExitOk;
}

struct ReportOptions
{
  std::string              item;
  std::string              category;
  std::optional<std::uint64_t> seed;
  std::string              now;
  std::vector<std::string> feeds;
};

int run_report(CommonOptions const &opts, ReportOptions const &r, std::ostream &out, std::ostream &err)
{
  Timestamp now = wall_clock_now();
  if (!r.now.empty())
  {
    auto const parsed = parse_iso8601(r.now);
    if (!parsed)
    {
      err << "--now must look like 2026-01-31T12:00:00Z\n";
      return kExitUsage;
    }
    now = *parsed;
  }
  auto const selector = r.item.empty() ? warehouse::RecordSelector::category(r.category)
                                       : warehouse::RecordSelector::item(r.item);
  auto const clock = [now] { return now; };

  std::unique_ptr<Gateway> gateway;
  if (r.feeds.empty())
  {
    gateway = std::make_unique<Gateway>(opts.load(), clock);
  }
  else
  {
    gateway = std::make_unique<Gateway>(Gateway::InMemory{}, opts.load(), clock);
    for (auto const &feed : r.feeds)
    {
      print_issues(gateway->import_feed(read_file(feed)).issues, err);
    }
  }

  auto const stats = gateway->stats_report(selector);
  out << (r.item.empty() ? "category: " + r.category : "item: " + r.item) << "\n";
  out << "min: " << stats["min"].get<std::int64_t>() << "\n";
  out << "median: " << stats["median"].get<std::int64_t>() << "\n";
  out << "max: " << stats["max"].get<std::int64_t>() << "\n";
  out << "quantity sold: " << stats["quantity_sold"].get<std::int64_t>() << "\n";
  out << "sample size: " << stats["sample_size"].get<std::size_t>() << "\n";

  try
  {
    auto const p = gateway->prediction_report(selector, r.seed);
    out << "period days: " << p["period_days"].get<std::int64_t>() << "\n";
    out << "past median: " << p["past"].get<std::int64_t>() << "\n";
    out << "present median: " << p["present"].get<std::int64_t>() << "\n";
    out << "variant 1: " << p["variant1"].get<std::int64_t>() << "\n";
    out << "variant 2: " << p["variant2"].get<double>() << "\n";
    out << "future: " << p["future"].get<std::int64_t>() << "\n";
    out << "seed: " << p["seed"].get<std::uint64_t>() << "\n";
  }
  catch (warehouse::InsufficientHistory const &ex)
  {
    out << "prediction: unavailable, " << ex.what() << "\n";
  }
  return kExitOk;
}

int run_simulate(std::string const &file, std::optional<std::uint64_t> seed, std::ostream &out)
{
  auto spec = sim::parse_scenario(read_file(file));
  if (seed)
  {
    spec.seed = *seed;
  }
  out << sim::run_scenario(spec).render();
  return kExitOk;
}

}  // namespace

int cli_main(int argc, char const *const *argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Agora auction platform"};
  app.require_subcommand(1);

  CommonOptions common;

  auto       *serve = app.add_subcommand("serve", "start the HTTP API and event stream");
  std::string host  = "0.0.0.0";
  int         port  = 0;
  add_common(serve, common);
  serve->add_option("--host", host, "listen address");
  serve->add_option("--port", port, "listen port (overrides config)");

  auto       *import = app.add_subcommand("import", "load an auction-feed XML file into the warehouse");
  std::string feed_file;
  add_common(import, common);
  import->add_option("file", feed_file, "auction-feed document")->required();

  auto         *report = app.add_subcommand("report", "statistics and market prediction");
  ReportOptions ropts;
  add_common(report, common);
  auto *item_opt = report->add_option("--item", ropts.item, "item name");
  auto *cat_opt  = report->add_option("--category", ropts.category, "category");
  item_opt->excludes(cat_opt);
  report->add_option("--seed", ropts.seed, "prediction seed");
  report->add_option("--now", ropts.now, "report time, YYYY-MM-DDTHH:MM:SSZ");
  report->add_option("--feed", ropts.feeds, "report over these feed files instead of the data dir");

  auto                        *simulate = app.add_subcommand("simulate", "run a scenario and print its transcript");
  std::string                  scenario_file;
  std::optional<std::uint64_t> sim_seed;
  simulate->add_option("--scenario", scenario_file, "scenario JSON file")->required();
  simulate->add_option("--seed", sim_seed, "override the scenario seed");

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::ParseError const &ex)
  {
    int const code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (report->parsed() && ropts.item.empty() && ropts.category.empty())
  {
    err << "report needs --item or --category\n";
    return kExitUsage;
  }

  try
  {
    if (serve->parsed())
    {
      return run_serve(common, host, port, out, err);
    }
    if (import->parsed())
    {
      return run_import(common, feed_file, out, err);
    }
    if (report->parsed())
    {
      return run_report(common, ropts, out, err);
    }
    return run_simulate(scenario_file, sim_seed, out);
  }
  catch (ConfigError const &ex)
  {
    err << ex.what() << "\n";
    return kExitUsage;
  }
  catch (Error const &ex)
  {
    err << ex.what() << "\n";
    return kExitDataError;
  }
  catch (std::filesystem::filesystem_error const &ex)
  {
    err << ex.what() << "\n";
    return kExitDataError;
  }
}

}  // namespace agora::gateway
