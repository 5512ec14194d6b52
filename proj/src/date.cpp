// Copyright 2026 The pmkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pmkit/date.hpp"

#include <charconv>

#include "pmkit/error.hpp"

namespace pmkit {

namespace chr = std::chrono;

namespace {

void append_padded(std::string& out, int value, int width) {
  if (value < 0) {
    out += '-';
    value = -value;
  }
  char buf[12];
  int n = 0;
  do {
    buf[n++] = static_cast<char>('0' + value % 10);
    value /= 10;
  } while (value > 0);
  for (int i = n; i < width; ++i) out += '0';
  while (n > 0) out += buf[--n];
}

}  // namespace

std::optional<Day> Day::from_ymd(int year, unsigned month, unsigned day) {
  chr::year_month_day ymd{chr::year{year}, chr::month{month}, chr::day{day}};
  if (!ymd.ok()) return std::nullopt;
  return Day(static_cast<std::int32_t>(
      chr::sys_days{ymd}.time_since_epoch().count()));
}

chr::year_month_day Day::ymd() const {
  return chr::year_month_day{chr::sys_days{chr::days{days_}}};
}

int Day::year() const { return static_cast<int>(ymd().year()); }
unsigned Day::month() const { return static_cast<unsigned>(ymd().month()); }
unsigned Day::day() const { return static_cast<unsigned>(ymd().day()); }

std::string Day::iso() const {
  const auto d = ymd();
  std::string out;
  out.reserve(10);
  append_padded(out, static_cast<int>(d.year()), 4);
  out += '-';
  append_padded(out, static_cast<int>(static_cast<unsigned>(d.month())), 2);
  out += '-';
  append_padded(out, static_cast<int>(static_cast<unsigned>(d.day())), 2);
  return out;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

template <typename T>
bool to_number(std::string_view s, T& out) {
  if (!all_digits(s)) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::optional<Day> parse_iso_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0, d = 0;
  if (!to_number(text.substr(0, 4), y) || !to_number(text.substr(5, 2), m) ||
      !to_number(text.substr(8, 2), d))
    return std::nullopt;
  return Day::from_ymd(y, m, d);
}

DateFormat::DateFormat(std::string_view pattern) : pattern_(pattern) {
  bool y = false, m = false, d = false;
  for (std::size_t i = 0; i < pattern.size();) {
    if (pattern.substr(i, 4) == "YYYY") {
      pieces_.push_back({Field::kYear, 0});
      y = true;
      i += 4;
    } else if (pattern.substr(i, 2) == "MM") {
      pieces_.push_back({Field::kMonth, 0});
      m = true;
      i += 2;
    } else if (pattern.substr(i, 2) == "DD") {
      pieces_.push_back({Field::kDay, 0});
      d = true;
      i += 2;
    } else {
      pieces_.push_back({Field::kLiteral, pattern[i]});
      ++i;
    }
  }
  if (!y || !m || !d)
    throw Error(ErrorKind::kInvalidArgument,
                "date format must contain YYYY, MM and DD: " + pattern_);
}

std::optional<Day> DateFormat::parse(std::string_view text) const {
  int year = 0;
  unsigned month = 0, day = 0;
  std::size_t pos = 0;
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const Piece& piece = pieces_[k];
    if (piece.field == Field::kLiteral) {
      if (pos >= text.size() || text[pos] != piece.literal) return std::nullopt;
      ++pos;
      continue;
    }
    std::size_t width = piece.field == Field::kYear ? 4 : 2;
    // Month and day may be a single digit when delimited.
    if (piece.field != Field::kYear && pos < text.size()) {
      const bool delimited =
          (k == 0 || pieces_[k - 1].field == Field::kLiteral) &&
          (k + 1 == pieces_.size() || pieces_[k + 1].field == Field::kLiteral);
      const std::size_t next = pos + 1;
      if (delimited && (next >= text.size() || text[next] < '0' || text[next] > '9'))
        width = 1;
    }
    if (pos + width > text.size()) return std::nullopt;
    const auto digits = text.substr(pos, width);
    bool ok = false;
    switch (piece.field) {
      case Field::kYear: ok = to_number(digits, year); break;
      case Field::kMonth: ok = to_number(digits, month); break;
      case Field::kDay: ok = to_number(digits, day); break;
      case Field::kLiteral: break;
    }
    if (!ok) return std::nullopt;
    pos += width;
  }
  if (pos != text.size()) return std::nullopt;
  return Day::from_ymd(year, month, day);
}

std::string DateFormat::format(Day day) const {
  const auto ymd = day.ymd();
  std::string out;
  out.reserve(pattern_.size());
  for (const Piece& piece : pieces_) {
    switch (piece.field) {
      case Field::kYear:
        append_padded(out, static_cast<int>(ymd.year()), 4);
        break;
      case Field::kMonth:
        append_padded(out, static_cast<int>(static_cast<unsigned>(ymd.month())), 2);
        break;
      case Field::kDay:
        append_padded(out, static_cast<int>(static_cast<unsigned>(ymd.day())), 2);
        break;
      case Field::kLiteral:
        out += piece.literal;
        break;
    }
  }
  return out;
}

}  // namespace pmkit
