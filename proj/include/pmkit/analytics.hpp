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
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "pmkit/event_model.hpp"
#include "pmkit/ingest.hpp"

namespace pmkit {

// ---------------------------------------------------------------------------
// Log statistics
// ---------------------------------------------------------------------------

struct LogStats {
  std::size_t total_traces = 0;
  std::size_t distinct_traces = 0;
  double distinct_pct = 0.0;
  std::size_t total_events = 0;
  std::size_t distinct_activities = 0;
  std::size_t filtered_events = 0;
  double filtered_pct = 0.0;
  std::size_t min_len = 0;
  double avg_len = 0.0;
  std::size_t max_len = 0;
};

/// distinct_traces counts unique activity sequences; filtered_pct is
/// dropped / (dropped + total_events).
LogStats compute_stats(std::span<const Trace> traces,
                       std::size_t dropped_events = 0);

/// Percentages and avg_len rounded to one decimal.
nlohmann::ordered_json to_json(const LogStats& stats);

/// 100 * part / whole, 0 when whole is 0.
double percentage(double part, double whole);

/// Round half away from zero to `digits` decimals.
double round_to(double value, int digits);

// ---------------------------------------------------------------------------
// Directly-follows graph
// ---------------------------------------------------------------------------

class DFGMatrix {
 public:
  DFGMatrix() = default;
  explicit DFGMatrix(std::vector<ActivityLabel> labels);

  const std::vector<ActivityLabel>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }

  std::uint64_t at(std::size_t from, std::size_t to) const {
    return counts_[from * labels_.size() + to];
  }
  std::uint64_t& at(std::size_t from, std::size_t to) {
    return counts_[from * labels_.size() + to];
  }
  /// 0 when either label is not a node.
  std::uint64_t count(std::string_view from, std::string_view to) const;
  std::optional<std::size_t> index_of(std::string_view label) const;

  std::uint64_t total() const;

  friend bool operator==(const DFGMatrix&, const DFGMatrix&) = default;

 private:
  std::vector<ActivityLabel> labels_;
  std::vector<std::uint64_t> counts_;
};

/// Nodes are the activities observed in the traces, in `order` rank when an
/// order is given and lexicographic otherwise. Observed activities missing
/// from the order raise UnknownLabelError.
DFGMatrix compute_dfg(std::span<const Trace> traces,
                      const ActivityOrder* order = nullptr);

/// Header row and column of labels; integer cells.
void write_dfg_csv(const DFGMatrix& dfg, std::ostream& sink);
nlohmann::ordered_json to_json(const DFGMatrix& dfg);

// ---------------------------------------------------------------------------
// Variants
// ---------------------------------------------------------------------------

struct VariantEntry {
  std::vector<ActivityLabel> sequence;
  std::size_t frequency = 0;

  friend bool operator==(const VariantEntry&, const VariantEntry&) = default;
};

struct VariantRanking {
  /// Frequency descending, then sequence lexicographic ascending.
  std::vector<VariantEntry> entries;
};

/// Full ranking of all variants.
VariantRanking rank_variants(std::span<const Trace> traces);

/// At most k entries of rank_variants. Throws Error(kInvalidArgument) for
/// k == 0.
VariantRanking top_k_variants(std::span<const Trace> traces, std::size_t k);

/// "⟨A,C,D⟩ 16172"
std::string render_entry(const VariantEntry& entry);

// ---------------------------------------------------------------------------
// Temporal distributions
// ---------------------------------------------------------------------------

enum class BucketKind { kMonth, kFortnight };

BucketKind parse_bucket_kind(std::string_view text);
std::string_view to_string(BucketKind kind);

struct TemporalHistogram {
  ActivityLabel activity;
  BucketKind bucket_kind = BucketKind::kMonth;
  std::vector<std::pair<Day, std::size_t>> buckets;

  std::size_t total() const;
};

/// Month buckets are calendar months clipped to the window; fortnight
/// buckets are 14-day spans from window.start (the last one may be short).
/// Only events of `activity` inside the window are counted.
TemporalHistogram temporal_histogram(const EventLog& log,
                                     const ActivityLabel& activity,
                                     BucketKind kind,
                                     const PeriodWindow& window);

/// "bucket_start,count"
void write_histogram_csv(const TemporalHistogram& histogram,
                         std::ostream& sink);

/// Event count per activity.
std::map<ActivityLabel, std::size_t> activity_counts(const EventLog& log);

/// Per-activity share of all events in percent. Throws Error(kEmptyInput)
/// on an empty log.
std::map<ActivityLabel, double> relative_frequencies(const EventLog& log);

}  // namespace pmkit
