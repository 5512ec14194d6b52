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

#include "pmkit/event_model.hpp"

#include <cctype>

#include "pmkit/error.hpp"

namespace pmkit {

ActivityLabel::ActivityLabel(std::string label) : label_(std::move(label)) {
  if (!is_valid(label_))
    throw Error(ErrorKind::kInvalidArgument,
                "invalid activity label '" + label_ +
                    "': must be non-empty without whitespace");
}

bool ActivityLabel::is_valid(std::string_view label) {
  if (label.empty()) return false;
  for (unsigned char c : label)
    if (std::isspace(c)) return false;
  return true;
}

ActivityOrder::ActivityOrder(std::vector<ActivityLabel> labels)
    : labels_(std::move(labels)) {
  index_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i].str(), i).second)
      throw Error(ErrorKind::kInvalidArgument,
                  "duplicate activity in order: " + labels_[i].str());
  }
}

ActivityOrder ActivityOrder::parse(std::string_view comma_separated) {
  if (comma_separated.find_first_not_of(" \t\r\n") == std::string_view::npos)
    throw Error(ErrorKind::kInvalidArgument, "empty activity order");
  std::vector<ActivityLabel> labels;
  std::size_t start = 0;
  while (start <= comma_separated.size()) {
    std::size_t end = comma_separated.find(',', start);
    if (end == std::string_view::npos) end = comma_separated.size();
    auto token = comma_separated.substr(start, end - start);
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front())))
      token.remove_prefix(1);
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back())))
      token.remove_suffix(1);
    if (token.empty())
      throw Error(ErrorKind::kInvalidArgument,
                  "empty label in activity order '" + std::string(comma_separated) + "'");
    labels.emplace_back(std::string(token));
    start = end + 1;
  }
  return ActivityOrder(std::move(labels));
}

const ActivityOrder& ActivityOrder::gp_default() {
  static const ActivityOrder order = parse("A,B,C,D,E,F,G");
  return order;
}

std::size_t ActivityOrder::rank(const ActivityLabel& label) const {
  if (auto r = find(label.str())) return *r;
  throw UnknownLabelError({label.str()});
}

std::optional<std::size_t> ActivityOrder::find(std::string_view label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string ActivityOrder::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) out += ',';
    out += labels_[i].str();
  }
  return out;
}

std::weak_ordering event_compare(const Event& lhs, const Event& rhs,
                                 const ActivityOrder& order) {
  if (auto c = lhs.date <=> rhs.date; c != 0) return c;
  return order.rank(lhs.activity) <=> order.rank(rhs.activity);
}

bool is_date_ordered(std::span<const Event> events) {
  for (std::size_t i = 1; i < events.size(); ++i)
    if (events[i].date < events[i - 1].date) return false;
  return true;
}

std::vector<Trace> group_by_case(const EventLog& log) {
  std::vector<Trace> traces;
  std::unordered_map<std::string_view, std::size_t> slot;
  for (const Event& e : log) {
    auto [it, inserted] = slot.try_emplace(e.case_id, traces.size());
    if (inserted) traces.push_back(Trace{e.case_id, {}});
    traces[it->second].events.push_back(e);
  }
  return traces;
}

EventLog flatten(std::span<const Trace> traces) {
  std::size_t n = 0;
  for (const Trace& t : traces) n += t.events.size();
  EventLog log;
  log.reserve(n);
  for (const Trace& t : traces)
    log.insert(log.end(), t.events.begin(), t.events.end());
  return log;
}

std::string variant_string(const Trace& trace) {
  std::string out;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    if (i) out += ',';
    out += trace.events[i].activity.str();
  }
  return out;
}

std::string render_variant(std::span<const ActivityLabel> sequence) {
  std::string out = "⟨";
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (i) out += ',';
    out += sequence[i].str();
  }
  out += "⟩";
  return out;
}

}  // namespace pmkit
