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
#include "pmkit/repair.hpp"
#include "pmkit/segmentation.hpp"
#include "pmkit/synth.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace pmkit {
namespace {

Day d(const char* iso) { return *parse_iso_date(iso); }

Event ev(const char* c, const char* a, const char* date) {
  return Event{c, ActivityLabel(a), d(date)};
}

std::vector<std::string> variants(const SegmentationResult& r) {
  std::vector<std::string> out;
  for (const Trace& t : r.traces) out.push_back(variant_string(t));
  return out;
}

TEST(Segment, LeadingNonStartEventIsDropped) {
  const auto r = segment({ev("p", "B", "2020-01-01"), ev("p", "A", "2020-01-02")});
  EXPECT_EQ(variants(r), std::vector<std::string>{"A"});
  EXPECT_EQ(r.dropped_events, 1u);
  EXPECT_DOUBLE_EQ(r.dropped_fraction, 0.5);
}

TEST(Segment, StartWithinDelta0Appends) {
  const auto r = segment({ev("p", "A", "2020-01-01"), ev("p", "C", "2020-01-05"),
                          ev("p", "A", "2020-03-01")});
  EXPECT_EQ(variants(r), std::vector<std::string>{"A,C,A"});
  EXPECT_EQ(r.dropped_events, 0u);
}

TEST(Segment, StartBeyondBothThresholdsSplits) {
  const auto r = segment({ev("p", "A", "2020-01-01"), ev("p", "C", "2020-01-05"),
                          ev("p", "A", "2020-09-01")});
  EXPECT_EQ(variants(r), (std::vector<std::string>{"A,C", "A"}));
  EXPECT_EQ(r.traces[0].trace_id, "p#1");
  EXPECT_EQ(r.traces[1].trace_id, "p");
}

TEST(Segment, DeltaNRescuesTheAppend) {
  const auto r = segment({ev("p", "A", "2020-01-01"), ev("p", "C", "2020-06-20"),
                          ev("p", "A", "2020-07-10")});
  EXPECT_EQ(variants(r), std::vector<std::string>{"A,C,A"});
}

TEST(Segment, InclusiveThresholdBoundaries) {
  SegmentationConfig config;
  config.delta0_days = 10;
  config.deltaN_days = 3;
  // Exactly delta0 from the first event.
  EXPECT_EQ(segment({ev("p", "A", "2020-01-01"), ev("p", "A", "2020-01-11")}, config).traces.size(), 1u);
  EXPECT_EQ(segment({ev("p", "A", "2020-01-01"), ev("p", "A", "2020-01-12")}, config).traces.size(), 2u);
  // Exactly deltaN from the last event.
  EXPECT_EQ(segment({ev("p", "A", "2020-01-01"), ev("p", "B", "2020-01-20"),
                     ev("p", "A", "2020-01-23")}, config).traces.size(), 1u);
  EXPECT_EQ(segment({ev("p", "A", "2020-01-01"), ev("p", "B", "2020-01-20"),
                     ev("p", "A", "2020-01-24")}, config).traces.size(), 2u);
}

TEST(Segment, ZeroThresholdsStillAppendSameDay) {
  SegmentationConfig config;
  config.delta0_days = 0;
  config.deltaN_days = 0;
  const auto r = segment({ev("p", "A", "2020-01-01"), ev("p", "B", "2020-01-05"),
                          ev("p", "A", "2020-01-05"), ev("p", "A", "2020-01-06")},
                         config);
  EXPECT_EQ(variants(r), (std::vector<std::string>{"A,B,A", "A"}));
}

TEST(Segment, RepeatedSplitsNumberArchives) {
  const auto r = segment({ev("p", "A", "2018-01-01"), ev("p", "A", "2019-01-01"),
                          ev("q", "A", "2019-06-01"), ev("p", "A", "2020-01-01")});
  std::vector<std::string> ids;
  for (const Trace& t : r.traces) ids.push_back(t.trace_id);
  EXPECT_EQ(ids, (std::vector<std::string>{"p#1", "p#2", "q", "p"}));
  for (const Trace& t : r.traces) EXPECT_EQ(lineage_of(t.trace_id), t.events[0].case_id);
}

TEST(Segment, EmptyLog) {
  const auto r = segment({});
  EXPECT_TRUE(r.traces.empty());
  EXPECT_EQ(r.dropped_events, 0u);
  EXPECT_EQ(r.dropped_fraction, 0.0);
}

TEST(Segment, DateRegressionIsPrecondition) {
  try {
    segment({ev("p", "A", "2020-01-02"), ev("q", "A", "2020-01-01")});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kPrecondition);
    EXPECT_NE(std::string(e.what()).find("repair"), std::string::npos);
  }
}

TEST(Segment, ConfigValidation) {
  SegmentationConfig empty;
  empty.start_activities.clear();
  EXPECT_THROW(empty.validate(), Error);
  SegmentationConfig negative;
  negative.delta0_days = -1;
  EXPECT_THROW(negative.validate(), Error);
  SegmentationConfig reversed;
  reversed.delta0_days = 5;
  reversed.deltaN_days = 60;
  EXPECT_NO_THROW(reversed.validate());
}

TEST(TraceId, SchemeAndInjectivity) {
  EXPECT_EQ(generate_trace_id("p1", 1), "p1#1");
  EXPECT_EQ(generate_trace_id("p1", 2), "p1#2");
  EXPECT_NE(generate_trace_id("p1", 12), generate_trace_id("p11", 2));
  EXPECT_EQ(lineage_of("p1#12"), "p1");
  EXPECT_EQ(lineage_of("p1"), "p1");
}

TEST(TraceText, WriteAndRead) {
  const std::vector<Trace> traces{Trace{"p#1", {ev("p", "A", "2020-01-01"), ev("p", "C", "2020-01-02")}},
                                  Trace{"q", {ev("q", "A", "2020-01-03")}}};
  std::ostringstream out;
  write_trace_text(traces, out);
  EXPECT_EQ(out.str(), "p#1: A,C\nq: A\n");
  std::istringstream in(out.str());
  const auto back = read_trace_text(in);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].trace_id, "p#1");
  EXPECT_EQ(variant_string(back[0]), "A,C");
  EXPECT_EQ(back[0].events[0].case_id, "p");
  std::istringstream bad("no separator here\n");
  EXPECT_THROW(read_trace_text(bad), Error);
}

TEST(SegmentProperties, MatchesNaiveReplayAndCheckers) {
  testing::RandomInputs gen(1234);
  for (int round = 0; round < 500; ++round) {
    const int alphabet = gen.uniform_int(1, 6);
    const EventLog log = gen.sorted_log(1000, alphabet, gen.uniform_int(1, 40));
    const auto config = gen.segmentation_config(alphabet);
    const auto got = segment(log, config);
    const auto want = testing::naive_segment(log, config);
    ASSERT_EQ(got.traces, want.traces) << "round " << round;
    ASSERT_EQ(got.dropped_events, want.dropped);
    ASSERT_EQ(testing::check_segmentation(log, got, config), "") << "round " << round;
  }
}

TEST(SegmentProperties, CheckersCatchBrokenResults) {
  const EventLog log{ev("p", "A", "2020-01-01"), ev("p", "B", "2020-01-02"),
                     ev("p", "A", "2021-01-01")};
  const SegmentationConfig config;
  auto r = segment(log, config);
  ASSERT_EQ(testing::check_segmentation(log, r, config), "");

  auto merged = r;
  merged.traces[0].events.push_back(merged.traces[1].events[0]);
  merged.traces.pop_back();
  EXPECT_NE(testing::check_thresholds(merged, config), "");

  auto lost = r;
  lost.traces.pop_back();
  EXPECT_NE(testing::check_partition(log, lost), "");

  auto bad_start = r;
  std::swap(bad_start.traces[0].events[0], bad_start.traces[0].events[1]);
  EXPECT_NE(testing::check_boundary(log, bad_start, config), "");
}

TEST(SegmentProperties, DefaultSyntheticProfile) {
  SynthProfile profile;
  const EventLog log = repair_log(generate(profile), profile.alphabet);
  const SegmentationConfig config;
  const auto r = segment(log, config);
  EXPECT_EQ(testing::check_segmentation(log, r, config), "");
  EXPECT_GE(r.dropped_fraction, 0.030);
  EXPECT_LE(r.dropped_fraction, 0.045);
}

}  // namespace
}  // namespace pmkit
