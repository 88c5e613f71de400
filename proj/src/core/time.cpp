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

#include "agora/core/time.hpp"

#include <charconv>
#include <cstdio>

namespace agora {

namespace {

bool parse_digits(std::string_view text, std::size_t pos, std::size_t count, int &out)
{
  if (pos + count > text.size())
  {
    return false;
  }
  int value = 0;
  for (std::size_t i = pos; i < pos + count; ++i)
  {
    char const c = text[i];
    if (c < '0' || c > '9')
    {
      return false;
    }
    value = value * 10 + (c - '0');
  }
  out = value;
  return true;
}

}  // namespace

std::string format_iso8601(Timestamp t)
{
  using namespace std::chrono;
  auto const             day = floor<days>(t);
  year_month_day const   ymd{day};
  hh_mm_ss<Seconds> const hms{t - day};

  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()), int(hms.hours().count()),
                int(hms.minutes().count()), int(hms.seconds().count()));
  return buf;
}

std::optional<Timestamp> parse_iso8601(std::string_view text)
{
  using namespace std::chrono;
  // YYYY-MM-DDTHH:MM:SSZ
  if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' ||
      text[13] != ':' || text[16] != ':' || text[19] != 'Z')
  {
    return std::nullopt;
  }
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  if (!parse_digits(text, 0, 4, y) || !parse_digits(text, 5, 2, mo) ||
      !parse_digits(text, 8, 2, d) || !parse_digits(text, 11, 2, h) ||
      !parse_digits(text, 14, 2, mi) || !parse_digits(text, 17, 2, s))
  {
    return std::nullopt;
  }
  year_month_day const ymd{year{y}, month{unsigned(mo)}, day{unsigned(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59)
  {
    return std::nullopt;
  }
  return Timestamp{sys_days{ymd}} + hours{h} + minutes{mi} + Seconds{s};
}

Timestamp wall_clock_now()
{
  return std::chrono::floor<Seconds>(std::chrono::system_clock::now());
}

}  // namespace agora
