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

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pmkit/date.hpp"

namespace pmkit {

/// Case ids may not contain this character; generated trace ids use it as
/// the separator between the raw case id and the split counter.
inline constexpr char kIdSeparator = '#';

/// Activity token: non-empty, no whitespace.
class ActivityLabel {
 public:
  ActivityLabel() = default;
  /// Throws Error(kInvalidArgument) on empty or whitespace-bearing input.
  explicit ActivityLabel(std::string label);

  static bool is_valid(std::string_view label);

  const std::string& str() const noexcept { return label_; }

  friend bool operator==(const ActivityLabel&, const ActivityLabel&) = default;
  friend auto operator<=>(const ActivityLabel&, const ActivityLabel&) = default;

 private:
  std::string label_;
};

struct Event {
  std::string case_id;
  ActivityLabel activity;
  Day date;

  friend bool operator==(const Event&, const Event&) = default;
};

/// Events in log order. Date-ordered after repair (see is_date_ordered).
using EventLog = std::vector<Event>;

struct Trace {
  std::string trace_id;
  std::vector<Event> events;

  friend bool operator==(const Trace&, const Trace&) = default;
};

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

/// Total order over activity labels; rank is the 0-based list position.
class ActivityOrder {
 public:
  ActivityOrder() = default;
  /// Throws Error(kInvalidArgument) on duplicate labels.
  explicit ActivityOrder(std::vector<ActivityLabel> labels);

  /// "A,B,C" (whitespace around tokens is ignored).
  static ActivityOrder parse(std::string_view comma_separated);

  /// A..G, the GP activity encoding.
  static const ActivityOrder& gp_default();

  /// Throws UnknownLabelError when the label is absent.
  std::size_t rank(const ActivityLabel& label) const;
  std::optional<std::size_t> find(std::string_view label) const;
  bool contains(std::string_view label) const { return find(label).has_value(); }

  std::span<const ActivityLabel> labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }

  std::string to_string() const;

  friend bool operator==(const ActivityOrder& a, const ActivityOrder& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<ActivityLabel> labels_;
  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>>
      index_;
};

inline std::size_t rank(const ActivityOrder& order, const ActivityLabel& label) {
  return order.rank(label);
}

/// Date ascending, then activity rank ascending. Case ids are ignored.
std::weak_ordering event_compare(const Event& lhs, const Event& rhs,
                                 const ActivityOrder& order);

/// True when dates never decrease along the log.
bool is_date_ordered(std::span<const Event> events);

/// One trace per case id, in order of first appearance; each trace keeps
/// its events in log order.
std::vector<Trace> group_by_case(const EventLog& log);

/// Concatenates trace events in trace order.
EventLog flatten(std::span<const Trace> traces);

/// Activity sequence of a trace rendered as "A,B,C".
std::string variant_string(const Trace& trace);

/// Renders a variant the way the variant tables do: "⟨A,C,D⟩".
std::string render_variant(std::span<const ActivityLabel> sequence);

}  // namespace pmkit
