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
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pmkit/event_model.hpp"

namespace pmkit {

struct SegmentationConfig {
  /// Activities allowed to open a trace.
  std::set<ActivityLabel> start_activities{ActivityLabel("A")};
  /// Max days from the trace's first event for a start activity to join.
  std::int32_t delta0_days = 180;
  /// Max days from the trace's last event for a start activity to join.
  std::int32_t deltaN_days = 30;

  /// Throws Error(kInvalidArgument): empty start set or negative thresholds.
  void validate() const;

  bool is_start(const ActivityLabel& label) const {
    return start_activities.contains(label);
  }

  friend bool operator==(const SegmentationConfig&,
                         const SegmentationConfig&) = default;
};

struct SegmentationResult {
  std::vector<Trace> traces;
  std::size_t dropped_events = 0;
  /// dropped_events / input events, 0 for an empty log.
  double dropped_fraction = 0.0;
};

/// Single forward pass that cuts unbounded per-case histories into traces.
///
/// A start activity opens a trace for an unseen case. Any other activity of
/// an open case is appended. A start activity of an open case joins the
/// open trace when it is within delta0 days of the trace's first event or
/// within deltaN days of its last event; otherwise the open trace is
/// archived under generate_trace_id(case, k) and a new one is opened under
/// the raw case id. Events of a case with no open trace that are not start
/// activities are dropped and counted.
///
/// Traces come out ordered by the input position of their first event.
/// Throws Error(kPrecondition) on any date regression in the input.
SegmentationResult segment(const EventLog& log,
                           const SegmentationConfig& config = {});

/// "<base>#<counter>"; injective because raw ids never contain '#'.
std::string generate_trace_id(std::string_view base_case_id,
                              std::uint64_t counter);

/// Raw case id of a (possibly generated) trace id.
std::string_view lineage_of(std::string_view trace_id);

// Line format "trace_id: A,C,A". Dates are not carried.
void write_trace_text(std::span<const Trace> traces, std::ostream& sink);
/// Events get the epoch day as date.
std::vector<Trace> read_trace_text(std::istream& source);

}  // namespace pmkit
