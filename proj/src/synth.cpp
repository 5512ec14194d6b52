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

#include "pmkit/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "pmkit/error.hpp"

namespace pmkit {

namespace synth_detail {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double Sampler::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Sampler::below(std::uint64_t n) {
  if (n == 0) return 0;
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(engine_()) * n) >> 64);
}

std::uint32_t Sampler::geometric(double mean) {
  if (mean <= 0.0) return 0;
  const double p_continue = mean / (mean + 1.0);
  std::uint32_t n = 0;
  while (bernoulli(p_continue)) ++n;
  return n;
}

std::size_t Sampler::categorical(const std::vector<double>& cumulative) {
  const double u = uniform() * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min(static_cast<std::size_t>(it - cumulative.begin()),
                  cumulative.size() - 1);
}

}  // namespace synth_detail

namespace {

using synth_detail::Sampler;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::kInvalidArgument, "invalid synth profile: " + what);
}

bool probability(double p) { return p >= 0.0 && p <= 1.0; }

std::vector<double> cumulative_of(const std::vector<double>& weights) {
  std::vector<double> c(weights.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) c[i] = (sum += weights[i]);
  return c;
}

}  // namespace

void SynthProfile::validate() const {
  require(first_day < last_day, "date range is degenerate");
  require(!alphabet.empty(), "alphabet is empty");
  require(activity_mix.size() == alphabet.size(),
          "activity_mix must have one weight per alphabet activity");
  require(std::all_of(activity_mix.begin(), activity_mix.end(),
                      [](double w) { return w >= 0.0 && std::isfinite(w); }),
          "activity weights must be non-negative");
  require(std::any_of(activity_mix.begin(), activity_mix.end(),
                      [](double w) { return w > 0.0; }),
          "at least one activity weight must be positive");
  require(!start_activities.empty(), "start activity set is empty");
  for (const auto& a : start_activities)
    require(alphabet.contains(a.str()), "start activity " + a.str() + " not in alphabet");
  require(probability(start_activity_weight), "start_activity_weight not in [0,1]");
  require(probability(orphan_lead_in_probability),
          "orphan_lead_in_probability not in [0,1]");
  require(probability(long_gap_probability), "long_gap_probability not in [0,1]");
  require(burst_followups_mean >= 0.0 && followup_gap_mean_days >= 0.0 &&
              inter_burst_gap_mean_days >= 0.0,
          "distribution means must be non-negative");
  require(long_gap_min_days >= 1 && long_gap_min_days <= long_gap_max_days,
          "long gap range is invalid");
  bool has_follow_up = false;
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (!start_activities.contains(alphabet.labels()[i]) && activity_mix[i] > 0.0)
      has_follow_up = true;
  require(has_follow_up || (start_activity_weight == 1.0 && orphan_lead_in_probability == 0.0),
          "non-start bursts need a positive weight on some non-start activity");
  for (const auto& peak : seasonal_peaks) {
    require(alphabet.contains(peak.activity.str()),
            "seasonal activity " + peak.activity.str() + " not in alphabet");
    require(peak.peak_month >= 1 && peak.peak_month <= 12, "peak month not in 1..12");
    require(probability(peak.concentration), "peak concentration not in [0,1]");
  }
}

EventLog generate(const SynthProfile& profile) {
  profile.validate();
  const auto& labels = profile.alphabet.labels();
  const std::size_t k = labels.size();

  const auto mix = cumulative_of(profile.activity_mix);
  std::vector<double> follow_up_weights(profile.activity_mix);
  std::vector<std::size_t> start_ids;
  for (std::size_t i = 0; i < k; ++i) {
    if (profile.start_activities.contains(labels[i])) {
      start_ids.push_back(i);
      follow_up_weights[i] = 0.0;
    }
  }
  const auto opener_mix = cumulative_of(follow_up_weights);
  const bool can_open_without_start = opener_mix.back() > 0.0;

  // Keep-probability of an activity at a given month (index 1..12).
  std::vector<std::array<double, 13>> seasonal(k);
  for (auto& row : seasonal) row.fill(1.0);
  for (const auto& peak : profile.seasonal_peaks) {
    auto& row = seasonal[*profile.alphabet.find(peak.activity.str())];
    for (unsigned m = 1; m <= 12; ++m) {
      const unsigned raw = m > peak.peak_month ? m - peak.peak_month : peak.peak_month - m;
      const unsigned distance = std::min(raw, 12 - raw);
      row[m] = std::max(0.0, 1.0 - peak.concentration * distance / 6.0);
    }
  }

  const std::int32_t span = profile.last_day - profile.first_day;
  EventLog log;
  std::vector<std::pair<std::size_t, Day>> burst;  // activity id, date
  std::vector<Event> history;

  for (std::size_t c = 0; c < profile.case_count; ++c) {
    Sampler rng(synth_detail::splitmix64(profile.seed + c * 0x9E3779B97F4A7C15ULL));
    const std::string case_id = "p" + std::to_string(c + 1);
    history.clear();

    Day day = profile.first_day + static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(span) + 1));
    bool lead_in = can_open_without_start && rng.bernoulli(profile.orphan_lead_in_probability);
    while (day <= profile.last_day) {
      burst.clear();
      const bool opens_with_start =
          !lead_in && (!can_open_without_start || rng.bernoulli(profile.start_activity_weight));
      lead_in = false;
      const std::size_t opener = opens_with_start
                                     ? start_ids[rng.below(start_ids.size())]
                                     : rng.categorical(opener_mix);
      burst.emplace_back(opener, day);

      Day cursor = day;
      const std::uint32_t followups = rng.geometric(profile.burst_followups_mean);
      for (std::uint32_t j = 0; j < followups; ++j) {
        cursor = cursor + static_cast<std::int32_t>(rng.geometric(profile.followup_gap_mean_days));
        if (profile.last_day < cursor) break;
        const std::size_t act = rng.categorical(mix);
        if (!rng.bernoulli(seasonal[act][cursor.month()])) continue;
        burst.emplace_back(act, cursor);
      }

      // Shuffle within each same-day run: recording order on a day is arbitrary.
      for (std::size_t lo = 0; lo < burst.size();) {
        std::size_t hi = lo;
        while (hi < burst.size() && burst[hi].second == burst[lo].second) ++hi;
        for (std::size_t i = hi - 1; i > lo; --i)
          std::swap(burst[i], burst[lo + rng.below(i - lo + 1)]);
        lo = hi;
      }
      for (const auto& [act, date] : burst) history.push_back(Event{case_id, labels[act], date});

      std::int32_t gap = 0;
      if (rng.bernoulli(profile.long_gap_probability)) {
        gap = profile.long_gap_min_days +
              static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(
                  profile.long_gap_max_days - profile.long_gap_min_days + 1)));
      } else {
        gap = 1 + static_cast<std::int32_t>(
                      rng.geometric(std::max(0.0, profile.inter_burst_gap_mean_days - 1.0)));
      }
      day = cursor + gap;
    }
    log.insert(log.end(), history.begin(), history.end());
  }

  std::stable_sort(log.begin(), log.end(),
                   [](const Event& a, const Event& b) { return a.date < b.date; });
  return log;
}

}  // namespace pmkit
