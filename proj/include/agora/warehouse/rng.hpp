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

#include <concepts>
#include <cstdint>

namespace agora::warehouse {

/**
 * 64-bit linear congruential generator, fully specified so any implementation can
 * reproduce a sequence from its seed:
 *
 *   state_0     = seed
 *   state_{n+1} = 6364136223846793005 * state_n + 1442695040888963407   (mod 2^64)
 *   output_n    = (state_{n+1} >> 11) * 2^-53                             in [0, 1)
 */
class SeededRng
{
public:
  static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t kIncrement  = 1442695040888963407ULL;

  explicit constexpr SeededRng(std::uint64_t seed) noexcept
    : seed_(seed)
    , state_(seed)
  {}

  constexpr double next() noexcept
  {
    state_ = kMultiplier * state_ + kIncrement;
    return static_cast<double>(state_ >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound); bound must be positive.
  constexpr std::uint64_t next_below(std::uint64_t bound) noexcept
  {
    return static_cast<std::uint64_t>(next() * static_cast<double>(bound)) % bound;
  }

  constexpr std::uint64_t seed() const noexcept
  {
    return seed_;
  }

private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

/// Anything that yields reals in [0, 1) and remembers the seed it started from.
template <typename R>
concept UniformSource = requires(R &r, R const &cr) {
  { r.next() } -> std::convertible_to<double>;
  { cr.seed() } -> std::convertible_to<std::uint64_t>;
};

}  // namespace agora::warehouse
