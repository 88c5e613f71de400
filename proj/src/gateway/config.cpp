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

#include "agora/gateway/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace agora::gateway {

namespace {

constexpr std::string_view kKeys[] = {"port",        "data_dir", "lookback_days",    "min_history",
                                      "period_days", "seed",     "advice_timeout_ms"};

std::string_view trim(std::string_view s)
{
  auto const first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
  {
    return {};
  }
  auto const last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::int64_t parse_int(std::string_view key, std::string_view value)
{
  std::int64_t out = 0;
  auto const [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
  {
    throw ConfigError("config " + std::string(key) + ": not an integer: " + std::string(value));
  }
  return out;
}

}  // namespace

std::optional<std::string> process_env(std::string const &name)
{
  if (char const *v = std::getenv(name.c_str()))
  {
    return std::string(v);
  }
  return std::nullopt;
}

void set_value(Config &config, std::string_view key, std::string_view value)
{
  value = trim(value);
  if (key == "data_dir")
  {
    config.data_dir = std::string(value);
    return;
  }
  std::int64_t *target = nullptr;
  if (key == "port")
    target = &config.port;
  else if (key == "lookback_days")
    target = &config.lookback_days;
  else if (key == "min_history")
    target = &config.min_history;
  else if (key == "period_days")
    target = &config.period_days;
  else if (key == "seed")
    target = &config.seed;
  else if (key == "advice_timeout_ms")
    target = &config.advice_timeout_ms;
  else
    throw ConfigError("unknown config key: " + std::string(key));
  *target = parse_int(key, value);
}

void apply_text(Config &config, std::string_view text)
{
  std::istringstream in{std::string(text)};
  std::string        line;
  int                number = 0;
  while (std::getline(in, line))
  {
    ++number;
    auto const content = trim(line);
    if (content.empty() || content.front() == '#')
    {
      continue;
    }
    auto const eq = content.find('=');
    if (eq == std::string_view::npos)
    {
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    }
    set_value(config, trim(content.substr(0, eq)), content.substr(eq + 1));
  }
}

void apply_env(Config &config, EnvLookup const &env)
{
  for (auto const key : kKeys)
  {
    std::string name = "AGORA_";
    for (char c : key)
    {
      name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    if (auto const value = env(name))
    {
      set_value(config, key, *value);
    }
  }
}

void validate(Config const &config)
{
  auto const positive = [](std::string_view key, std::int64_t v) {
    if (v <= 0)
    {
      throw ConfigError("config " + std::string(key) + " must be positive");
    }
  };
  positive("port", config.port);
  positive("lookback_days", config.lookback_days);
  positive("min_history", config.min_history);
  positive("period_days", config.period_days);
  positive("seed", config.seed);
  positive("advice_timeout_ms", config.advice_timeout_ms);
  if (config.port > 65535)
  {
    throw ConfigError("config port out of range");
  }
  if (config.data_dir.empty())
  {
    throw ConfigError("config data_dir must be set");
  }
}

Config load_config(std::optional<std::filesystem::path> const &file, EnvLookup const &env)
{
  Config config;
  if (file)
  {
    std::ifstream in(*file);
    if (!in)
    {
      throw ConfigError("cannot read config file " + file->string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    apply_text(config, text.str());
  }
  apply_env(config, env);
  validate(config);
  return config;
}

}  // namespace agora::gateway
