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
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pmkit/date.hpp"
#include "pmkit/event_model.hpp"

namespace pmkit {

struct SeasonalPeak {
  ActivityLabel activity;
  unsigned peak_month = 5;
  /// 0 disables the modulation; 1 suppresses the activity entirely six
  /// months away from the peak.
  double concentration = 0.0;

  friend bool operator==(const SeasonalPeak&, const SeasonalPeak&) = default;
};

/// Parameters of the synthetic GP-like log. Each case is a patient history
/// made of bursts (a visit day plus follow-ups) separated by gaps.
struct SynthProfile {
  std::size_t case_count = 10'000;
  Day first_day = *Day::from_ymd(2016, 1, 1);
  Day last_day = *Day::from_ymd(2020, 11, 30);
  ActivityOrder alphabet = ActivityOrder::gp_default();
  std::set<ActivityLabel> start_activities{ActivityLabel("A")};

  /// Probability that a burst opens with a start activity rather than a
  /// follow-up activity (e.g. a refill without a visit).
  double start_activity_weight = 0.9;
  /// Probability that a case history begins with a stray follow-up burst.
  double orphan_lead_in_probability = 0.55;

  /// Follow-ups per burst, geometric with this mean.
  double burst_followups_mean = 2.6;
  /// Day offset of a follow-up from the previous event, geometric.
  double followup_gap_mean_days = 0.6;
  /// Days between bursts, geometric.
  double inter_burst_gap_mean_days = 55.0;
  /// Chance of a long absence instead of a regular gap.
  double long_gap_probability = 0.06;
  std::int32_t long_gap_min_days = 200;
  std::int32_t long_gap_max_days = 540;

  /// Follow-up activity weights, aligned with alphabet. Start activities in
  /// the mix are allowed (repeat visits within a burst).
  std::vector<double> activity_mix{0.10, 0.17, 0.13, 0.22, 0.14, 0.18, 0.06};
  std::vector<SeasonalPeak> seasonal_peaks{
      {ActivityLabel("G"), 5, 0.8}};

  std::uint64_t seed = 20200311;

  /// Throws Error(kInvalidArgument) with the reason.
  void validate() const;
};

/// Deterministic for a fixed profile: each case draws from its own
/// std::mt19937_64 seeded with splitmix64(seed + index * 0x9E3779B97F4A7C15),
/// and all distributions are computed from raw engine output with integer
/// and exactly-rounded double arithmetic only. Case ids are "p<index>".
///
/// The result is stably sorted by date only; same-day events of a case keep
/// their generated (shuffled) activity order.
EventLog generate(const SynthProfile& profile);

/// Fixed-algorithm helpers, exposed for tests.
namespace synth_detail {

std::uint64_t splitmix64(std::uint64_t x);

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  /// [0, 1) with 53 random bits.
  double uniform();
  /// [0, n)
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p) { return uniform() < p; }
  /// Number of failures before the first success, with the given mean.
  std::uint32_t geometric(double mean);
  /// Index drawn proportionally to the weights.
  std::size_t categorical(const std::vector<double>& cumulative);

 private:
  std::mt19937_64 engine_;
};

}  // namespace synth_detail

}  // namespace pmkit
