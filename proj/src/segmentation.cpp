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

#include "pmkit/segmentation.hpp"

#include <istream>
#include <ostream>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pmkit/error.hpp"

namespace pmkit {

void SegmentationConfig::validate() const {
  if (start_activities.empty())
    throw Error(ErrorKind::kInvalidArgument, "start activity set is empty");
  if (delta0_days < 0 || deltaN_days < 0)
    throw Error(ErrorKind::kInvalidArgument,
                "segmentation thresholds must be non-negative");
}

std::string generate_trace_id(std::string_view base_case_id,
                              std::uint64_t counter) {
  std::string id(base_case_id);
  id += kIdSeparator;
  id += std::to_string(counter);
  return id;
}

std::string_view lineage_of(std::string_view trace_id) {
  return trace_id.substr(0, trace_id.find(kIdSeparator));
}

namespace {

// Dense ids for case strings. Open addressing over 8-byte slots with the
// keys copied into one arena, so lookups stay within a few compact arrays.
class CaseIndex {
 public:
  explicit CaseIndex(std::size_t expected) {
    std::size_t capacity = 64;
    while (capacity < expected * 2) capacity *= 2;
    slots_.assign(capacity, Slot{0, kEmpty});
  }

  // Returns (id, inserted).
  std::pair<std::uint32_t, bool> intern(std::string_view key) {
    const std::uint64_t h = std::hash<std::string_view>{}(key);
    const auto tag = static_cast<std::uint32_t>(h >> 32);
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = h & mask;; i = (i + 1) & mask) {
      Slot& slot = slots_[i];
      if (slot.id == kEmpty) {
        const auto id = static_cast<std::uint32_t>(keys_.size());
        slot = Slot{tag, id};
        keys_.push_back(Key{arena_.size(), key.size()});
        arena_.append(key);
        if (keys_.size() * 2 > slots_.size()) grow();
        return {id, true};
      }
      if (slot.tag == tag && key_of(slot.id) == key) return {slot.id, false};
    }
  }

 private:
  static constexpr std::uint32_t kEmpty = ~std::uint32_t{0};
  struct Slot {
    std::uint32_t tag;
    std::uint32_t id;
  };
  struct Key {
    std::size_t offset;
    std::size_t size;
  };

  std::string_view key_of(std::uint32_t id) const {
    return std::string_view(arena_).substr(keys_[id].offset, keys_[id].size);
  }

  void grow() {
    std::vector<Slot> old(slots_.size() * 2, Slot{0, kEmpty});
    old.swap(slots_);
    const std::size_t mask = slots_.size() - 1;
    for (const Slot& slot : old) {
      if (slot.id == kEmpty) continue;
      const std::uint64_t h = std::hash<std::string_view>{}(key_of(slot.id));
      std::size_t i = h & mask;
      while (slots_[i].id != kEmpty) i = (i + 1) & mask;
      slots_[i] = slot;
    }
  }

  std::vector<Slot> slots_;
  std::vector<Key> keys_;
  std::string arena_;
};

constexpr std::uint32_t kNoTrace = ~std::uint32_t{0};

struct CaseState {
  std::uint32_t slot = kNoTrace;  // open trace, or kNoTrace
  std::uint32_t archived = 0;
  Day first;  // date of the open trace's first event
  Day last;   // date of its latest event
};

}  // namespace

SegmentationResult segment(const EventLog& log, const SegmentationConfig& config) {
  config.validate();
  if (log.size() >= kNoTrace)
    throw Error(ErrorKind::kInvalidArgument, "event log too large to segment");
  std::vector<std::string_view> starts;
  for (const ActivityLabel& a : config.start_activities) starts.push_back(a.str());
  auto is_start = [&](const std::string& label) {
    for (std::string_view s : starts)
      if (s == label) return true;
    return false;
  };

  // Pass 1 decides the output trace of every event and touches only
  // compact per-case state. Pass 2 copies events into exactly sized traces.
  SegmentationResult result;
  CaseIndex cases(1024);
  std::vector<CaseState> state;
  std::vector<std::uint32_t> trace_of(log.size(), kNoTrace);
  std::vector<std::uint32_t> position(log.size());
  std::vector<std::uint32_t> trace_size;
  std::vector<std::uint32_t> trace_archive;  // 0 while the trace is open

  auto open_trace = [&](CaseState& s, Day date) {
    s.slot = static_cast<std::uint32_t>(trace_size.size());
    s.first = date;
    trace_size.push_back(0);
    trace_archive.push_back(0);
  };

  for (std::size_t i = 0; i < log.size(); ++i) {
    const Event& e = log[i];
    if (i > 0 && e.date < log[i - 1].date)
      throw Error(ErrorKind::kPrecondition,
                  "event log is not date-ordered at event " + std::to_string(i) +
                      " (" + e.date.iso() + " after " + log[i - 1].date.iso() +
                      "); run repair first");

    const bool start = is_start(e.activity.str());
    const auto [id, inserted] = cases.intern(e.case_id);
    if (inserted) state.emplace_back();
    CaseState& s = state[id];
    if (s.slot == kNoTrace) {
      if (!start) {
        ++result.dropped_events;
        continue;
      }
      open_trace(s, e.date);
    } else if (start && e.date - s.first > config.delta0_days &&
               e.date - s.last > config.deltaN_days) {
      // Archive the open trace under a generated id; the raw id moves on
      // to the fresh trace.
      trace_archive[s.slot] = ++s.archived;
      open_trace(s, e.date);
    }
    s.last = e.date;
    trace_of[i] = s.slot;
    position[i] = trace_size[s.slot]++;
  }

  result.traces.resize(trace_size.size());
  std::vector<Event*> base(trace_size.size());
  for (std::size_t t = 0; t < trace_size.size(); ++t) {
    result.traces[t].events.resize(trace_size[t]);
    base[t] = result.traces[t].events.data();
  }
  for (std::size_t i = 0; i < log.size(); ++i)
    if (trace_of[i] != kNoTrace) base[trace_of[i]][position[i]] = log[i];
  for (std::size_t t = 0; t < result.traces.size(); ++t) {
    Trace& trace = result.traces[t];
    const std::string& case_id = trace.events.front().case_id;
    trace.trace_id = trace_archive[t] ? generate_trace_id(case_id, trace_archive[t]) : case_id;
  }

  if (!log.empty())
    result.dropped_fraction = static_cast<double>(result.dropped_events) /
                              static_cast<double>(log.size());
  return result;
}

void write_trace_text(std::span<const Trace> traces, std::ostream& sink) {
  for (const Trace& t : traces) sink << t.trace_id << ": " << variant_string(t) << '\n';
  if (!sink) throw Error(ErrorKind::kIo, "failed writing trace text");
}

std::vector<Trace> read_trace_text(std::istream& source) {
  if (!source.good()) throw Error(ErrorKind::kIo, "trace text source is not readable");
  std::vector<Trace> traces;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto sep = line.rfind(": ");
    if (sep == std::string::npos || sep == 0)
      throw Error(ErrorKind::kSchema, "trace text line " + std::to_string(line_no) +
                                          ": expected 'trace_id: A,B,...'");
    Trace t;
    t.trace_id = line.substr(0, sep);
    const std::string lineage(lineage_of(t.trace_id));
    std::string_view rest = std::string_view(line).substr(sep + 2);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto token = rest.substr(0, comma);
      if (!ActivityLabel::is_valid(token))
        throw Error(ErrorKind::kSchema, "trace text line " + std::to_string(line_no) +
                                            ": invalid activity '" +
                                            std::string(token) + "'");
      t.events.push_back(Event{lineage, ActivityLabel(std::string(token)), Day{}});
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    traces.push_back(std::move(t));
  }
  return traces;
}

}  // namespace pmkit
