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

#include <gtest/gtest.h>

#include <sstream>

#include "pmkit/error.hpp"
#include "pmkit/ingest.hpp"
#include "support/generators.hpp"

namespace pmkit {
namespace {

Day d(const char* iso) { return *parse_iso_date(iso); }

CsvSchema short_header() {
  CsvSchema s;
  s.case_column = "case";
  s.activity_column = "act";
  s.date_column = "date";
  return s;
}

CsvParseResult parse(const std::string& text, const CsvSchema& schema = {}) {
  std::istringstream in(text);
  return parse_csv(in, schema);
}

ErrorKind kind_of_failure(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kIo;
}

// ----------------------------------------------------------------- CSV

TEST(Csv, CleanThreeRows) {
  const auto r = parse("case,act,date\np1,A,2020-03-01\np1,B,2020-03-01\np2,A,2020-03-02\n",
                       short_header());
  ASSERT_EQ(r.log.size(), 3u);
  EXPECT_EQ(r.report.rows_read, 3u);
  EXPECT_EQ(r.report.rows_rejected, 0u);
  EXPECT_EQ(r.log[1], (Event{"p1", ActivityLabel("B"), d("2020-03-01")}));
  EXPECT_EQ(r.log[2].case_id, "p2");
}

TEST(Csv, InvalidMonthIsRejectedWhenThresholdAllows) {
  CsvSchema schema = short_header();
  schema.max_reject_fraction = 0.5;
  const auto r = parse("case,act,date\np1,A,2020-03-01\np1,B,2020-13-01\np2,A,2020-03-02\n",
                       schema);
  EXPECT_EQ(r.log.size(), 2u);
  EXPECT_EQ(r.report.rows_rejected, 1u);
  EXPECT_EQ(r.report.rejects_by_reason.at("bad-date"), 1u);
  ASSERT_EQ(r.report.samples.size(), 1u);
  EXPECT_EQ(r.report.samples[0].line, 3u);
}

TEST(Csv, DefaultThresholdRaisesOnOneBadRowInThree) {
  EXPECT_EQ(kind_of_failure([] {
              parse("case,act,date\np1,A,2020-03-01\np1,B,2020-13-01\np2,A,2020-03-02\n",
                    short_header());
            }),
            ErrorKind::kRejectThreshold);
}

TEST(Csv, OneBadRowInHundredIsWithinDefaultThreshold) {
  std::string text = "case_id,activity,date\n";
  for (int i = 0; i < 99; ++i) text += "p" + std::to_string(i) + ",A,2020-03-01\n";
  text += "p99,A,not-a-date\n";
  const auto r = parse(text);
  EXPECT_EQ(r.log.size(), 99u);
  EXPECT_EQ(r.report.rows_rejected, 1u);
}

TEST(Csv, HeaderOnlyIsEmptyLog) {
  const auto r = parse("case,act,date\n", short_header());
  EXPECT_TRUE(r.log.empty());
  EXPECT_EQ(r.report.rows_read, 0u);
  EXPECT_EQ(r.report.rows_rejected, 0u);
}

TEST(Csv, MissingColumnNamesTheColumn) {
  try {
    parse("case_id,activity,when\np1,A,2020-03-01\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSchema);
    EXPECT_NE(std::string(e.what()).find("'date'"), std::string::npos);
  }
}

TEST(Csv, EmptySourceIsSchemaError) {
  EXPECT_EQ(kind_of_failure([] { parse(""); }), ErrorKind::kSchema);
}

TEST(Csv, RejectReasons) {
  CsvSchema schema;
  schema.max_reject_fraction = 1.0;
  const auto r = parse(
      "case_id,activity,date\n"
      "p1,A\n"                        // missing field
      ",A,2020-03-01\n"               // empty field
      "p1,A B,2020-03-01\n"           // bad activity
      "p1#2,A,2020-03-01\n"           // reserved separator
      "\"p1,A,2020-03-01\n"           // bad quoting
      "p1,A,2020-02-30\n"             // bad date
      "p1,A,2020-03-01\n",
      schema);
  EXPECT_EQ(r.log.size(), 1u);
  EXPECT_EQ(r.report.rows_rejected, 6u);
  for (const char* reason : {"missing-field", "empty-field", "bad-activity",
                             "reserved-separator", "bad-quoting", "bad-date"})
    EXPECT_EQ(r.report.rejects_by_reason.at(reason), 1u) << reason;
}

TEST(Csv, QuotingCrlfBomAndColumnOrder) {
  const auto r = parse(
      "\xEF\xBB\xBF" "date,activity,extra,case_id\r\n"
      "2020-03-01,A,\"x,y\",\"p \"\"1\"\"\"\r\n"
      "\r\n"
      "2020-03-02,B,,p2\r\n");
  ASSERT_EQ(r.log.size(), 2u);
  EXPECT_EQ(r.log[0].case_id, "p \"1\"");
  EXPECT_EQ(r.log[1].activity.str(), "B");
}

TEST(Csv, CustomDelimiterFormatAndNoHeader) {
  CsvSchema schema;
  schema.delimiter = ';';
  schema.date_format = "DD/MM/YYYY";
  schema.has_header = false;
  const auto r = parse("p1;A;01/03/2020\np1;C;2/3/2020\n", schema);
  ASSERT_EQ(r.log.size(), 2u);
  EXPECT_EQ(r.log[1].date, d("2020-03-02"));
  std::ostringstream out;
  write_csv(r.log, out, schema);
  EXPECT_EQ(out.str(), "p1;A;01/03/2020\np1;C;02/03/2020\n");
}

TEST(Csv, WriteQuotesWhenNeeded) {
  std::ostringstream out;
  write_csv({Event{"a,b", ActivityLabel("A"), d("2020-03-01")},
             Event{"q\"x", ActivityLabel("B"), d("2020-03-02")}},
            out);
  EXPECT_EQ(out.str(), "case_id,activity,date\n\"a,b\",A,2020-03-01\n\"q\"\"x\",B,2020-03-02\n");
}

TEST(Csv, ParseOfWriteIsIdentity) {
  testing::RandomInputs gen(3);
  for (int round = 0; round < 100; ++round) {
    const EventLog log = gen.sorted_log(300, 5, 20);
    std::ostringstream out;
    write_csv(log, out);
    EXPECT_EQ(parse(out.str()).log, log);
  }
}

// ----------------------------------------------------------------- XES

TEST(Xes, EmptyLogDocument) {
  std::ostringstream out;
  const auto bytes = write_xes(EventLog{}, out);
  EXPECT_EQ(bytes, out.str().size());
  EXPECT_NE(out.str().find("<log "), std::string::npos);
  EXPECT_EQ(out.str().find("<trace>"), std::string::npos);
  std::istringstream in(out.str());
  EXPECT_TRUE(read_xes(in).empty());
}

TEST(Xes, SingleEventLayout) {
  std::ostringstream out;
  write_xes(EventLog{Event{"p1", ActivityLabel("A"), d("2020-03-01")}}, out);
  const std::string expected =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<log xes.version=\"1.0\" xmlns=\"http://www.xes-standard.org/\">\n"
      "  <extension name=\"Concept\" prefix=\"concept\" "
      "uri=\"http://www.xes-standard.org/concept.xesext\"/>\n"
      "  <extension name=\"Time\" prefix=\"time\" "
      "uri=\"http://www.xes-standard.org/time.xesext\"/>\n"
      "  <trace>\n"
      "    <string key=\"concept:name\" value=\"p1\"/>\n"
      "    <event>\n"
      "      <string key=\"concept:name\" value=\"A\"/>\n"
      "      <date key=\"time:timestamp\" value=\"2020-03-01T00:00:00+00:00\"/>\n"
      "    </event>\n"
      "  </trace>\n"
      "</log>\n";
  EXPECT_EQ(out.str(), expected);
}

TEST(Xes, RoundTripAndDeterminism) {
  testing::RandomInputs gen(5);
  for (int round = 0; round < 100; ++round) {
    const auto traces = group_by_case(gen.sorted_log(200, 6, 15));
    std::ostringstream a, b;
    write_xes(std::span<const Trace>(traces), a);
    write_xes(std::span<const Trace>(traces), b);
    EXPECT_EQ(a.str(), b.str());
    std::istringstream in(a.str());
    EXPECT_EQ(read_xes(in), traces);
  }
}

TEST(Xes, EscapesSpecialCharacters) {
  const std::vector<Trace> traces{
      Trace{"p<&>\"'", {Event{"p<&>\"'", ActivityLabel("x&y"), d("2020-03-01")}}}};
  std::ostringstream out;
  write_xes(std::span<const Trace>(traces), out);
  std::istringstream in(out.str());
  EXPECT_EQ(read_xes(in), traces);
}

TEST(Xes, MissingTimestampNamesTrace) {
  std::istringstream in(
      "<log><trace><string key=\"concept:name\" value=\"p7\"/>"
      "<event><string key=\"concept:name\" value=\"A\"/></event></trace></log>");
  try {
    read_xes(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kXes);
    EXPECT_NE(std::string(e.what()).find("p7"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("timestamp"), std::string::npos);
  }
}

TEST(Xes, MissingNameIsError) {
  std::istringstream in(
      "<log><trace><string key=\"concept:name\" value=\"p7\"/>"
      "<event><date key=\"time:timestamp\" value=\"2020-03-01T10:00:00\"/></event></trace></log>");
  EXPECT_EQ(kind_of_failure([&] { read_xes(in); }), ErrorKind::kXes);
}

TEST(Xes, ExtraAttributesIgnoredAndTimeTruncated) {
  std::istringstream in(
      "<?xml version=\"1.0\"?>\n"
      "<log xes.version=\"1.0\"><global scope=\"event\"><string key=\"x\" value=\"y\"/></global>"
      "<classifier name=\"n\" keys=\"concept:name\"/>"
      "<trace><string key=\"concept:name\" value=\"p1#2\"/><int key=\"age\" value=\"4\"/>"
      "<event><string key=\"org:resource\" value=\"dr\"/>"
      "<date key=\"time:timestamp\" value=\"2020-03-01T23:59:59.123+05:00\"/>"
      "<string key=\"concept:name\" value=\"B\"/><float key=\"cost\" value=\"1.5\"/></event>"
      "</trace></log>");
  const auto traces = read_xes(in);
  ASSERT_EQ(traces.size(), 1u);
  EXPECT_EQ(traces[0].trace_id, "p1#2");
  ASSERT_EQ(traces[0].events.size(), 1u);
  EXPECT_EQ(traces[0].events[0], (Event{"p1", ActivityLabel("B"), d("2020-03-01")}));
}

TEST(Xes, MalformedDocuments) {
  for (const char* doc : {"<log><trace>", "not xml", "<foo/>", ""}) {
    std::istringstream in(doc);
    EXPECT_EQ(kind_of_failure([&] { read_xes(in); }), ErrorKind::kXes) << doc;
  }
}

// -------------------------------------------------------------- windows

TEST(PeriodWindow, BoundaryDates) {
  const EventLog log{Event{"p", ActivityLabel("A"), d("2020-02-29")},
                     Event{"p", ActivityLabel("A"), d("2020-03-01")},
                     Event{"p", ActivityLabel("A"), d("2020-11-30")},
                     Event{"p", ActivityLabel("A"), d("2020-12-01")}};
  const auto kept = filter_period(log, PeriodWindow{});
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].date, d("2020-03-01"));
  EXPECT_EQ(kept[1].date, d("2020-11-30"));
  EXPECT_TRUE(filter_period({}, PeriodWindow{}).empty());
  EXPECT_TRUE(filter_period(log, PeriodWindow::parse("2019")).empty());
}

TEST(PeriodWindow, ParseFormatValidate) {
  const auto w = PeriodWindow::parse("2018:01-15:02-29");
  EXPECT_EQ(w.year, 2018);
  EXPECT_EQ(w.to_string(), "2018:01-15:02-29");
  EXPECT_EQ(w.last_day(), d("2018-02-28"));
  EXPECT_EQ(PeriodWindow::parse("2020").to_string(), "2020:03-01:11-30");
  for (const char* bad : {"20x0", "2020:11-30:03-01", "2020:13-01:12-01", "2020:03-01", ""})
    EXPECT_EQ(kind_of_failure([&] { PeriodWindow::parse(bad); }), ErrorKind::kInvalidArgument)
        << bad;
}

TEST(PeriodWindow, FilterIsOrderPreservingSubsequence) {
  testing::RandomInputs gen(9);
  for (int round = 0; round < 50; ++round) {
    const EventLog log = gen.sorted_log(400, 4, 10);
    const PeriodWindow w{2019 + round % 2, {1, 1}, {12, 31}};
    const auto kept = filter_period(log, w);
    std::size_t j = 0;
    for (const Event& e : log)
      if (j < kept.size() && e == kept[j]) ++j;
    EXPECT_EQ(j, kept.size());
    for (const Event& e : kept) EXPECT_EQ(e.date.year(), w.year);
  }
}

TEST(PeriodWindow, UnionOfWindows) {
  const EventLog log{Event{"p", ActivityLabel("A"), d("2019-04-01")},
                     Event{"p", ActivityLabel("A"), d("2020-01-01")},
                     Event{"p", ActivityLabel("A"), d("2020-04-01")}};
  const std::vector<PeriodWindow> windows{PeriodWindow::parse("2019"), PeriodWindow::parse("2020")};
  EXPECT_EQ(filter_periods(log, windows).size(), 2u);
  EXPECT_EQ(filter_periods(log, {}).size(), 3u);
}

}  // namespace
}  // namespace pmkit
