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

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "pmkit/error.hpp"
#include "pmkit/ingest.hpp"

namespace pmkit {

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::kMissingField: return "missing-field";
    case RejectReason::kEmptyField: return "empty-field";
    case RejectReason::kBadDate: return "bad-date";
    case RejectReason::kBadActivity: return "bad-activity";
    case RejectReason::kReservedSeparator: return "reserved-separator";
    case RejectReason::kBadQuoting: return "bad-quoting";
  }
  return "unknown";
}

namespace {

// Splits one physical line into fields. Quoted fields may contain the
// delimiter and doubled quotes; they may not span lines.
bool split_line(std::string_view line, char delim,
                std::vector<std::string>& fields) {
  fields.clear();
  std::size_t i = 0;
  while (true) {
    std::string& field = fields.emplace_back();
    if (i < line.size() && line[i] == '"') {
      ++i;
      while (true) {
        if (i >= line.size()) return false;
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        field += line[i++];
      }
      if (i < line.size() && line[i] != delim) return false;
    } else {
      const std::size_t end = std::min(line.find(delim, i), line.size());
      field.assign(line.substr(i, end - i));
      i = end;
    }
    if (i >= line.size()) return true;
    ++i;  // delimiter
  }
}

std::string_view strip_cr(const std::string& line) {
  std::string_view v = line;
  if (!v.empty() && v.back() == '\r') v.remove_suffix(1);
  return v;
}

bool blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return c == ' ' || c == '\t'; });
}

void write_field(std::ostream& out, const std::string& value, char delim) {
  const bool quote = value.find_first_of(std::string{delim, '"', '\n', '\r'}) !=
                     std::string::npos;
  if (!quote) {
    out << value;
    return;
  }
  out << '"';
  for (char c : value) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

CsvParseResult parse_csv(std::istream& source, const CsvSchema& schema) {
  if (!source.good())
    throw Error(ErrorKind::kIo, "CSV source is not readable");
  if (schema.case_column == schema.activity_column ||
      schema.case_column == schema.date_column ||
      schema.activity_column == schema.date_column)
    throw Error(ErrorKind::kInvalidArgument,
                "CSV schema column names must be distinct");

  const DateFormat date_format(schema.date_format);
  CsvParseResult result;
  ParseReport& report = result.report;

  std::string line;
  std::vector<std::string> fields;
  std::size_t line_no = 0;
  // case, activity, date
  std::array<std::size_t, 3> column{0, 1, 2};

  if (schema.has_header) {
    bool found_header = false;
    while (std::getline(source, line)) {
      ++line_no;
      std::string_view view = strip_cr(line);
      if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
      if (blank(view)) continue;
      if (!split_line(view, schema.delimiter, fields))
        throw Error(ErrorKind::kSchema, "malformed CSV header");
      const std::array<const std::string*, 3> names{
          &schema.case_column, &schema.activity_column, &schema.date_column};
      for (std::size_t k = 0; k < 3; ++k) {
        auto it = std::find(fields.begin(), fields.end(), *names[k]);
        if (it == fields.end())
          throw Error(ErrorKind::kSchema,
                      "CSV header is missing column '" + *names[k] + "'");
        column[k] = static_cast<std::size_t>(it - fields.begin());
      }
      found_header = true;
      break;
    }
    if (!found_header) {
      if (source.bad()) throw Error(ErrorKind::kIo, "failed reading CSV source");
      throw Error(ErrorKind::kSchema, "CSV source has no header line");
    }
  }
  const std::size_t needed = *std::max_element(column.begin(), column.end()) + 1;

  std::unordered_map<std::string, ActivityLabel, StringHash, std::equal_to<>>
      labels;
  auto reject = [&](RejectReason reason) {
    ++report.rows_rejected;
    ++report.rejects_by_reason[std::string(to_string(reason))];
    if (report.samples.size() < ParseReport::kMaxSamples)
      report.samples.push_back({line_no, reason});
  };

  while (std::getline(source, line)) {
    ++line_no;
    const std::string_view view = strip_cr(line);
    if (blank(view)) continue;
    ++report.rows_read;
    if (!split_line(view, schema.delimiter, fields)) {
      reject(RejectReason::kBadQuoting);
      continue;
    }
    if (fields.size() < needed) {
      reject(RejectReason::kMissingField);
      continue;
    }
    std::string& case_id = fields[column[0]];
    const std::string& activity = fields[column[1]];
    const std::string& date_text = fields[column[2]];
    if (case_id.empty() || activity.empty() || date_text.empty()) {
      reject(RejectReason::kEmptyField);
      continue;
    }
    if (case_id.find(kIdSeparator) != std::string::npos) {
      reject(RejectReason::kReservedSeparator);
      continue;
    }
    auto label = labels.find(activity);
    if (label == labels.end()) {
      if (!ActivityLabel::is_valid(activity)) {
        reject(RejectReason::kBadActivity);
        continue;
      }
      label = labels.emplace(activity, ActivityLabel(activity)).first;
    }
    const auto date = date_format.parse(date_text);
    if (!date) {
      reject(RejectReason::kBadDate);
      continue;
    }
    result.log.push_back(Event{std::move(case_id), label->second, *date});
  }
  if (source.bad()) throw Error(ErrorKind::kIo, "failed reading CSV source");

  if (report.rows_read > 0 &&
      static_cast<double>(report.rows_rejected) >
          schema.max_reject_fraction * static_cast<double>(report.rows_read)) {
    throw Error(ErrorKind::kRejectThreshold,
                "CSV reject fraction " + std::to_string(report.rows_rejected) +
                    "/" + std::to_string(report.rows_read) +
                    " exceeds threshold " +
                    std::to_string(schema.max_reject_fraction));
  }
  return result;
}

void write_csv(const EventLog& log, std::ostream& sink, const CsvSchema& schema) {
  const DateFormat date_format(schema.date_format);
  const char d = schema.delimiter;
  if (schema.has_header) {
    write_field(sink, schema.case_column, d);
    sink << d;
    write_field(sink, schema.activity_column, d);
    sink << d;
    write_field(sink, schema.date_column, d);
    sink << '\n';
  }
  for (const Event& e : log) {
    write_field(sink, e.case_id, d);
    sink << d;
    write_field(sink, e.activity.str(), d);
    sink << d << date_format.format(e.date) << '\n';
  }
  if (!sink) throw Error(ErrorKind::kIo, "failed writing CSV sink");
}

}  // namespace pmkit
