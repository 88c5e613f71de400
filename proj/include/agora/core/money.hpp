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

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace agora {

/// Non-negative amount in whole minor currency units.
class Money
{
public:
  constexpr Money() = default;

  constexpr explicit Money(std::int64_t minor)
    : minor_(minor)
  {
    if (minor < 0)
    {
      throw std::invalid_argument("money amount must be non-negative");
    }
  }

  constexpr std::int64_t minor() const noexcept
  {
    return minor_;
  }

  friend constexpr auto operator<=>(Money, Money) = default;

  friend constexpr Money operator+(Money a, Money b)
  {
    return Money{a.minor_ + b.minor_};
  }

  friend constexpr Money operator-(Money a, Money b)
  {
    return Money{a.minor_ - b.minor_};
  }

  friend constexpr Money operator*(Money a, std::int64_t k)
  {
    return Money{a.minor_ * k};
  }

private:
  std::int64_t minor_ = 0;
};

inline std::string to_string(Money m)
{
  return std::to_string(m.minor());
}

inline std::ostream &operator<<(std::ostream &os, Money m)
{
  return os << m.minor();
}

}  // namespace agora
