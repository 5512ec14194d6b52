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

#include <charconv>

#include "pmkit/error.hpp"
#include "pmkit/ingest.hpp"

namespace pmkit {

namespace {

bool parse_uint(std::string_view text, unsigned& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

MonthDay parse_month_day(std::string_view text, std::string_view whole) {
  MonthDay md;
  const auto dash = text.find('-');
  if (dash == std::string_view::npos || !parse_uint(text.substr(0, dash), md.month) ||
      !parse_uint(text.substr(dash + 1), md.day))
    throw Error(ErrorKind::kInvalidArgument,
                "invalid period window '" + std::string(whole) +
                    "': expected YEAR[:MM-DD:MM-DD]");
  return md;
}

std::string two_digits(unsigned v) {
  std::string s = std::to_string(v);
  return s.size() < 2 ? "0" + s : s;
}

}  // namespace

PeriodWindow PeriodWindow::parse(std::string_view text) {
  PeriodWindow w;
  const auto colon = text.find(':');
  const auto year_text = text.substr(0, colon);
  int year = 0;
  auto [ptr, ec] = std::from_chars(year_text.data(),
                                   year_text.data() + year_text.size(), year);
  if (year_text.empty() || ec != std::errc() ||
      ptr != year_text.data() + year_text.size())
    throw Error(ErrorKind::kInvalidArgument,
                "invalid period window '" + std::string(text) +
                    "': expected YEAR[:MM-DD:MM-DD]");
  w.year = year;
  if (colon != std::string_view::npos) {
    const auto rest = text.substr(colon + 1);
    const auto colon2 = rest.find(':');
    if (colon2 == std::string_view::npos)
      throw Error(ErrorKind::kInvalidArgument,
                  "invalid period window '" + std::string(text) +
                      "': expected YEAR[:MM-DD:MM-DD]");
    w.start = parse_month_day(rest.substr(0, colon2), text);
    w.end = parse_month_day(rest.substr(colon2 + 1), text);
  }
  w.validate();
  return w;
}

std::string PeriodWindow::to_string() const {
  return std::to_string(year) + ":" + two_digits(start.month) + "-" +
         two_digits(start.day) + ":" + two_digits(end.month) + "-" +
         two_digits(end.day);
}

void PeriodWindow::validate() const {
  // 2000 is a leap year, so Feb-29 is accepted as a bound.
  for (const MonthDay& md : {start, end}) {
    if (!Day::from_ymd(2000, md.month, md.day))
      throw Error(ErrorKind::kInvalidArgument,
                  "invalid month-day " + two_digits(md.month) + "-" +
                      two_digits(md.day) + " in period window");
  }
  if (end < start)
    throw Error(ErrorKind::kInvalidArgument,
                "period window start is after its end: " + to_string());
}

Day PeriodWindow::first_day() const {
  if (auto d = Day::from_ymd(year, start.month, start.day)) return *d;
  return *Day::from_ymd(year, 3, 1);
}

Day PeriodWindow::last_day() const {
  if (auto d = Day::from_ymd(year, end.month, end.day)) return *d;
  return *Day::from_ymd(year, 2, 28);
}

bool PeriodWindow::contains(Day day) const {
  return first_day() <= day && day <= last_day();
}

EventLog filter_period(const EventLog& log, const PeriodWindow& window) {
  const PeriodWindow windows[] = {window};
  return filter_periods(log, windows);
}

EventLog filter_periods(const EventLog& log,
                        std::span<const PeriodWindow> windows) {
  if (windows.empty()) return log;
  std::vector<std::pair<Day, Day>> ranges;
  for (const PeriodWindow& w : windows) ranges.emplace_back(w.first_day(), w.last_day());
  EventLog out;
  for (const Event& e : log) {
    for (const auto& [first, last] : ranges) {
      if (first <= e.date && e.date <= last) {
        out.push_back(e);
        break;
      }
    }
  }
  return out;
}

}  // namespace pmkit
