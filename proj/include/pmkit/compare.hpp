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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "pmkit/event_model.hpp"

namespace pmkit {

enum class RuleKind { kConditional, kUnconditional };
enum class FavoredLog { kNone, kX, kY };

std::string_view to_string(RuleKind kind);
std::string_view to_string(FavoredLog favored);

/// "If antecedent occurs in a trace, consequent also occurs" (conditional)
/// or "consequent occurs in a trace" (unconditional), with the probability
/// measured in each log.
struct CooccurrenceRule {
  RuleKind kind = RuleKind::kUnconditional;
  std::optional<ActivityLabel> antecedent;
  ActivityLabel consequent;
  double prob_x = 0.0;
  double prob_y = 0.0;
  /// |prob_x - prob_y| in percentage points.
  double delta_pp = 0.0;
  FavoredLog favored = FavoredLog::kNone;

  friend bool operator==(const CooccurrenceRule&,
                         const CooccurrenceRule&) = default;
};

struct CooccurrenceOptions {
  std::size_t top_n = 10;
  /// Conditional rules need antecedent support >= this in both logs.
  double min_support = 0.01;
  /// Rules with delta_pp below this are dropped.
  double min_delta_pp = 0.01;
};

/// Presence-based co-occurrence rules ranked by delta descending, ties by
/// (kind, antecedent, consequent). Throws Error(kEmptyInput) when either
/// trace set is empty.
std::vector<CooccurrenceRule> cooccurrence_diff(
    std::span<const Trace> traces_x, std::span<const Trace> traces_y,
    const CooccurrenceOptions& options = {});

/// "In Variant X it is 16.70% more likely than Variant Y that if [B] occurs,
/// also [D] occurs". Rules with no favored log render with X first.
std::string render_rule(const CooccurrenceRule& rule,
                        std::string_view name_x = "Variant X",
                        std::string_view name_y = "Variant Y");

/// kind,antecedent,consequent,p_x,p_y,delta_pp,favored
void write_rules_csv(std::span<const CooccurrenceRule> rules,
                     std::ostream& sink);
nlohmann::ordered_json to_json(std::span<const CooccurrenceRule> rules);

// ---------------------------------------------------------------------------

enum class Aggregate { kSingle, kMean };

Aggregate parse_aggregate(std::string_view text);

using ActivityCounts = std::map<std::string, double>;

struct ActivityChange {
  double count_reference = 0.0;
  double count_baseline = 0.0;
  /// Absent when the baseline count is 0.
  std::optional<double> change_pct;
};

struct ChangeReport {
  std::map<std::string, ActivityChange> per_activity;
};

/// Percentage change of each activity's reference count against the
/// baseline (a single count map, or the arithmetic mean of several).
/// Activities missing from a map count as 0.
ChangeReport change_report(const ActivityCounts& reference,
                           std::span<const ActivityCounts> baselines,
                           Aggregate aggregate);

/// activity,count_reference,count_baseline,change_pct
void write_change_csv(const ChangeReport& report, std::ostream& sink);
nlohmann::ordered_json to_json(const ChangeReport& report);

}  // namespace pmkit
