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

#include <string>
#include <utility>
#include <vector>

#include "agora/auction/auction.hpp"
#include "agora/sim/scenario.hpp"

namespace agora::sim {

struct TranscriptEntry
{
  Seconds                                          at{0};
  std::string                                      kind;
  std::vector<std::pair<std::string, std::string>> fields;

  std::string field(std::string const &key) const;
};

struct Transcript
{
  std::vector<TranscriptEntry>         entries;
  std::vector<auction::AuctionOutcome> outcomes;
  Timestamp                            epoch;

  /// One line per entry, "+<offset> KIND key=value ...", then one OUTCOME line per auction.
  std::string render() const;
};

/// Runs the scenario on a logical clock. Pure in `spec`. Throws InvalidScenario, including
/// when an auction is still open at the horizon.
Transcript run_scenario(ScenarioSpec const &spec);

}  // namespace agora::sim
