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

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pmkit/date.hpp"
#include "pmkit/event_model.hpp"

namespace pmkit {

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

struct CsvSchema {
  std::string case_column = "case_id";
  std::string activity_column = "activity";
  std::string date_column = "date";
  std::string date_format = "YYYY-MM-DD";
  char delimiter = ',';
  /// Without a header the columns are positional: case, activity, date.
  bool has_header = true;
  /// parse_csv fails when rows_rejected / rows_read exceeds this.
  double max_reject_fraction = 0.01;
};

enum class RejectReason {
  kMissingField,
  kEmptyField,
  kBadDate,
  kBadActivity,
  kReservedSeparator,
  kBadQuoting,
};

std::string_view to_string(RejectReason reason);

struct RejectedRow {
  std::size_t line = 0;  // 1-based physical line
  RejectReason reason = RejectReason::kMissingField;
};

struct ParseReport {
  std::size_t rows_read = 0;
  std::size_t rows_rejected = 0;
  std::map<std::string, std::size_t> rejects_by_reason;
  /// The first few rejected rows, for diagnostics.
  std::vector<RejectedRow> samples;

  static constexpr std::size_t kMaxSamples = 16;
};

struct CsvParseResult {
  EventLog log;
  ParseReport report;
};

/// Single pass over the stream; rows keep their input order. Rejected rows
/// are counted rather than fatal unless the reject fraction exceeds the
/// schema threshold.
CsvParseResult parse_csv(std::istream& source, const CsvSchema& schema = {});

/// Writes the log with the schema's column names, delimiter and date format.
void write_csv(const EventLog& log, std::ostream& sink,
               const CsvSchema& schema = {});

// ---------------------------------------------------------------------------
// XES subset: log / trace / event with concept:name and time:timestamp.
// ---------------------------------------------------------------------------

/// One trace element per case id (order of first appearance).
std::size_t write_xes(const EventLog& log, std::ostream& sink);
/// One trace element per Trace. Returns the number of bytes written.
std::size_t write_xes(std::span<const Trace> traces, std::ostream& sink);

/// Timestamps are truncated to their calendar date; unknown elements and
/// attributes are ignored. Each event's case_id is the trace name up to the
/// first kIdSeparator.
std::vector<Trace> read_xes(std::istream& source);

// ---------------------------------------------------------------------------
// Period windows
// ---------------------------------------------------------------------------

struct MonthDay {
  unsigned month = 1;
  unsigned day = 1;

  friend auto operator<=>(const MonthDay&, const MonthDay&) = default;
};

/// Inclusive month-day range within one calendar year.
struct PeriodWindow {
  int year = 2020;
  MonthDay start{3, 1};
  MonthDay end{11, 30};

  /// "YYYY" or "YYYY:MM-DD:MM-DD".
  static PeriodWindow parse(std::string_view text);
  std::string to_string() const;

  /// Throws Error(kInvalidArgument) on start > end or invalid month-days.
  void validate() const;

  bool contains(Day day) const;
  /// First and last real calendar days in the window (a Feb-29 bound in a
  /// non-leap year clamps to Feb-28 / Mar-01).
  Day first_day() const;
  Day last_day() const;

  friend bool operator==(const PeriodWindow&, const PeriodWindow&) = default;
};

EventLog filter_period(const EventLog& log, const PeriodWindow& window);

/// Events contained in any of the windows; an empty window list keeps all.
EventLog filter_periods(const EventLog& log,
                        std::span<const PeriodWindow> windows);

}  // namespace pmkit
