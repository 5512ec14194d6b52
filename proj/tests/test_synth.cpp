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

#include "pmkit/analytics.hpp"
#include "pmkit/error.hpp"
#include "pmkit/ingest.hpp"
#include "pmkit/synth.hpp"

namespace pmkit {
namespace {

SynthProfile small(std::size_t cases, std::uint64_t seed = 42) {
  SynthProfile p;
  p.case_count = cases;
  p.seed = seed;
  return p;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

std::string csv_of(const EventLog& log) {
  std::ostringstream out;
  write_csv(log, out);
  return out.str();
}

TEST(Synth, ZeroCasesIsEmpty) { EXPECT_TRUE(generate(small(0)).empty()); }

TEST(Synth, SameSeedSameLog) {
  EXPECT_EQ(generate(small(300)), generate(small(300)));
  EXPECT_NE(generate(small(300, 1)), generate(small(300, 2)));
}

TEST(Synth, CasesAreIndependentOfCaseCount) {
  // Per-case sub-seeds: the first cases do not change when more are added.
  const auto few = group_by_case(generate(small(20)));
  const auto many = group_by_case(generate(small(40)));
  for (const Trace& t : few) {
    const auto it = std::find_if(many.begin(), many.end(),
                                 [&](const Trace& u) { return u.trace_id == t.trace_id; });
    ASSERT_NE(it, many.end());
    EXPECT_EQ(it->events, t.events);
  }
}

TEST(Synth, PinnedOutput) {
  // Guards the documented generator algorithm against accidental change.
  const std::string csv = csv_of(generate(small(50, 7)));
  EXPECT_EQ(fnv1a(csv), 7829726733110773450ULL) << "hash " << fnv1a(csv);
}

TEST(Synth, DateOrderedWithinRange) {
  const auto p = small(500);
  const auto log = generate(p);
  EXPECT_TRUE(is_date_ordered(log));
  for (const Event& e : log) {
    EXPECT_GE(e.date, p.first_day);
    EXPECT_LE(e.date, p.last_day);
    EXPECT_TRUE(p.alphabet.contains(e.activity.str()));
  }
}

TEST(Synth, SameDayRunsAreNotPreSorted) {
  // Repair has work to do: some same-day run within a case is out of rank order.
  const auto log = generate(small(500));
  const auto& order = ActivityOrder::gp_default();
  bool unsorted = false;
  for (const Trace& t : group_by_case(log))
    for (std::size_t i = 1; i < t.events.size(); ++i)
      unsorted |= t.events[i].date == t.events[i - 1].date &&
                  order.rank(t.events[i].activity) < order.rank(t.events[i - 1].activity);
  EXPECT_TRUE(unsorted);
}

TEST(Synth, DefaultFrequencyOrdering) {
  const auto counts = activity_counts(generate(small(3000)));
  std::size_t a = counts.at(ActivityLabel("A")), g = counts.at(ActivityLabel("G"));
  for (const auto& [label, n] : counts) {
    EXPECT_LE(n, a) << label.str();
    EXPECT_GE(n, g) << label.str();
  }
}

TEST(Synth, SeasonalPeakShapesTheActivity) {
  SynthProfile p = small(3000);
  const auto log = generate(p);
  std::size_t may = 0, november = 0;
  for (const Event& e : log) {
    if (e.activity.str() != "G") continue;
    if (e.date.month() == 5) ++may;
    if (e.date.month() == 11) ++november;
  }
  EXPECT_GT(may, 2 * november);
}

TEST(Synth, InvalidProfiles) {
  auto expect_invalid = [](const SynthProfile& p) {
    try {
      generate(p);
      ADD_FAILURE() << "accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kInvalidArgument);
    }
  };
  SynthProfile p = small(10);
  p.last_day = p.first_day;
  expect_invalid(p);
  p = small(10);
  p.activity_mix.assign(7, 0.0);
  expect_invalid(p);
  p = small(10);
  p.activity_mix[2] = -1.0;
  expect_invalid(p);
  p = small(10);
  p.activity_mix.pop_back();
  expect_invalid(p);
  p = small(10);
  p.start_activity_weight = 1.5;
  expect_invalid(p);
  p = small(10);
  p.start_activities = {ActivityLabel("Z")};
  expect_invalid(p);
  p = small(10);
  p.seasonal_peaks = {{ActivityLabel("G"), 13, 0.5}};
  expect_invalid(p);
}

TEST(SynthDetail, SplitMixReferenceValues) {
  // First outputs of the reference splitmix64 stream seeded with 0.
  EXPECT_EQ(synth_detail::splitmix64(0), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(synth_detail::splitmix64(0x9E3779B97F4A7C15ULL), 0x6E789E6AA1B965F4ULL);
}

TEST(SynthDetail, SamplerRanges) {
  synth_detail::Sampler s(1);
  double mean = 0;
  for (int i = 0; i < 20000; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(s.below(7), 7u);
    mean += s.geometric(2.0);
  }
  EXPECT_NEAR(mean / 20000, 2.0, 0.1);
  EXPECT_EQ(s.below(0), 0u);
  EXPECT_EQ(s.geometric(0.0), 0u);
  const std::vector<double> cumulative{0.0, 1.0, 1.0};
  for (int i = 0; i < 100; ++i) EXPECT_EQ(s.categorical(cumulative), 1u);
}

}  // namespace
}  // namespace pmkit
