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

#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pmkit {

/// A calendar day. Stored as a signed day count from 1970-01-01, so the
/// difference of two days is plain integer subtraction.
class Day {
 public:
  constexpr Day() = default;
  constexpr explicit Day(std::int32_t days_since_epoch)
      : days_(days_since_epoch) {}

  /// Returns nullopt when (year, month, day) is not a real calendar date.
  static std::optional<Day> from_ymd(int year, unsigned month, unsigned day);

  constexpr std::int32_t days_since_epoch() const { return days_; }

  std::chrono::year_month_day ymd() const;
  int year() const;
  unsigned month() const;
  unsigned day() const;

  /// YYYY-MM-DD
  std::string iso() const;

  constexpr Day operator+(std::int32_t days) const { return Day(days_ + days); }
  constexpr Day operator-(std::int32_t days) const { return Day(days_ - days); }
  friend constexpr std::int32_t operator-(Day a, Day b) {
    return a.days_ - b.days_;
  }
  friend constexpr auto operator<=>(Day, Day) = default;

 private:
  std::int32_t days_ = 0;
};

/// Strict YYYY-MM-DD.
std::optional<Day> parse_iso_date(std::string_view text);

/// A date pattern built from the tokens YYYY, MM and DD plus literal
/// characters, e.g. "YYYY-MM-DD" or "DD/MM/YYYY". MM and DD accept one or
/// two digits when literals (or the ends of the text) sit on both sides.
class DateFormat {
 public:
  explicit DateFormat(std::string_view pattern = "YYYY-MM-DD");

  std::optional<Day> parse(std::string_view text) const;
  std::string format(Day day) const;
  const std::string& pattern() const { return pattern_; }

 private:
  enum class Field { kYear, kMonth, kDay, kLiteral };
  struct Piece {
    Field field;
    char literal;
  };

  std::string pattern_;
  std::vector<Piece> pieces_;
};

}  // namespace pmkit
