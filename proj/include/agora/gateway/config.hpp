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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "agora/core/error.hpp"

namespace agora::gateway {

class ConfigError : public Error
{
public:
  using Error::Error;
};

/**
 * Server settings. The file form is one "key = value" per line; blank lines and lines
 * starting with '#' are ignored. Each key can be overridden by an environment variable
 * named AGORA_<KEY in upper case>, e.g. AGORA_PORT.
 *
 *   port               TCP port of the HTTP API (default 8080)
 *   data_dir           directory holding events.log (default ./agora-data)
 *   lookback_days      advisor history window (default 90)
 *   min_history        advisor minimum sample before the category fallback (default 3)
 *   period_days        prediction period length (default 365)
 *   seed               default prediction seed (default 1)
 *   advice_timeout_ms  request-protocol timeout towards the advisor (default 5000)
 */
struct Config
{
  std::int64_t          port              = 8080;
  std::filesystem::path data_dir          = "agora-data";
  std::int64_t          lookback_days     = 90;
  std::int64_t          min_history       = 3;
  std::int64_t          period_days       = 365;
  std::int64_t          seed              = 1;
  std::int64_t          advice_timeout_ms = 5000;
};

using EnvLookup = std::function<std::optional<std::string>(std::string const &)>;

/// Reads the process environment.
std::optional<std::string> process_env(std::string const &name);

/// Applies one key; throws ConfigError on unknown keys or bad values.
void set_value(Config &config, std::string_view key, std::string_view value);

/// Applies every line of a config file's text on top of `config`.
void apply_text(Config &config, std::string_view text);

/// Applies AGORA_* overrides.
void apply_env(Config &config, EnvLookup const &env);

/// Throws ConfigError unless every numeric value is positive and data_dir is set.
void validate(Config const &config);

/// Defaults, then the file (when given), then the environment; validated.
Config load_config(std::optional<std::filesystem::path> const &file, EnvLookup const &env = process_env);

}  // namespace agora::gateway
