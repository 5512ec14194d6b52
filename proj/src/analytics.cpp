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

#include "pmkit/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "pmkit/error.hpp"

namespace pmkit {

namespace {

// Dense ids for activity labels, assigned in order of first sight.
class LabelInterner {
 public:
  char32_t id(const ActivityLabel& label) {
    auto [it, inserted] = ids_.try_emplace(label.str(), 0);
    if (inserted) {
      it->second = static_cast<char32_t>(labels_.size());
      labels_.push_back(label);
    }
    return it->second;
  }
  const std::vector<ActivityLabel>& labels() const { return labels_; }

 private:
  std::unordered_map<std::string, char32_t, StringHash, std::equal_to<>> ids_;
  std::vector<ActivityLabel> labels_;
};

std::u32string variant_key(const Trace& trace, LabelInterner& interner) {
  std::u32string key;
  key.reserve(trace.events.size());
  for (const Event& e : trace.events) key.push_back(interner.id(e.activity));
  return key;
}

}  // namespace

double percentage(double part, double whole) {
  return whole == 0.0 ? 0.0 : 100.0 * part / whole;
}

double round_to(double value, int digits) {
  const double scale = std::pow(10.0, digits);
  return std::round(value * scale) / scale;
}

LogStats compute_stats(std::span<const Trace> traces, std::size_t dropped_events) {
  LogStats s;
  s.total_traces = traces.size();
  s.filtered_events = dropped_events;
  LabelInterner interner;
  std::unordered_set<std::u32string> variants;
  std::size_t min_len = std::numeric_limits<std::size_t>::max();
  for (const Trace& t : traces) {
    const std::size_t len = t.events.size();
    s.total_events += len;
    min_len = std::min(min_len, len);
    s.max_len = std::max(s.max_len, len);
    variants.insert(variant_key(t, interner));
  }
  s.distinct_traces = variants.size();
  s.distinct_activities = interner.labels().size();
  if (s.total_traces > 0) {
    s.min_len = min_len;
    s.avg_len = static_cast<double>(s.total_events) / static_cast<double>(s.total_traces);
  }
  s.distinct_pct = percentage(static_cast<double>(s.distinct_traces),
                              static_cast<double>(s.total_traces));
  s.filtered_pct = percentage(static_cast<double>(dropped_events),
                              static_cast<double>(dropped_events + s.total_events));
  return s;
}

nlohmann::ordered_json to_json(const LogStats& s) {
  return nlohmann::ordered_json{
      {"total_traces", s.total_traces},
      {"distinct_traces", s.distinct_traces},
      {"distinct_pct", round_to(s.distinct_pct, 1)},
      {"total_events", s.total_events},
      {"distinct_activities", s.distinct_activities},
      {"filtered_events", s.filtered_events},
      {"filtered_pct", round_to(s.filtered_pct, 1)},
      {"min_len", s.min_len},
      {"avg_len", round_to(s.avg_len, 1)},
      {"max_len", s.max_len},
  };
}

// ---------------------------------------------------------------------------

DFGMatrix::DFGMatrix(std::vector<ActivityLabel> labels)
    : labels_(std::move(labels)), counts_(labels_.size() * labels_.size(), 0) {}

std::optional<std::size_t> DFGMatrix::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i].str() == label) return i;
  return std::nullopt;
}

std::uint64_t DFGMatrix::count(std::string_view from, std::string_view to) const {
  const auto f = index_of(from);
  const auto t = index_of(to);
  return f && t ? at(*f, *t) : 0;
}

std::uint64_t DFGMatrix::total() const {
  std::uint64_t sum = 0;
  for (auto c : counts_) sum += c;
  return sum;
}

DFGMatrix compute_dfg(std::span<const Trace> traces, const ActivityOrder* order) {
  LabelInterner interner;
  std::vector<std::uint64_t> dense;
  std::size_t width = 0;
  std::vector<char32_t> ids;
  for (const Trace& t : traces) {
    ids.clear();
    for (const Event& e : t.events) ids.push_back(interner.id(e.activity));
    if (interner.labels().size() > width) {
      // Grow the square matrix, keeping existing cells.
      const std::size_t grown = std::max(interner.labels().size(), width * 2);
      std::vector<std::uint64_t> next(grown * grown, 0);
      for (std::size_t r = 0; r < width; ++r)
        std::copy_n(dense.begin() + static_cast<std::ptrdiff_t>(r * width), width,
                    next.begin() + static_cast<std::ptrdiff_t>(r * grown));
      dense = std::move(next);
      width = grown;
    }
    for (std::size_t i = 1; i < ids.size(); ++i) ++dense[ids[i - 1] * width + ids[i]];
  }

  // Output node order.
  const auto& seen = interner.labels();
  std::vector<std::size_t> perm(seen.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  if (order) {
    std::vector<std::string> unknown;
    std::vector<std::size_t> rank(seen.size());
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (auto r = order->find(seen[i].str())) rank[i] = *r;
      else unknown.push_back(seen[i].str());
    }
    if (!unknown.empty()) throw UnknownLabelError(std::move(unknown));
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
  } else {
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t a, std::size_t b) { return seen[a] < seen[b]; });
  }

  std::vector<ActivityLabel> labels;
  for (std::size_t i : perm) labels.push_back(seen[i]);
  DFGMatrix dfg(std::move(labels));
  for (std::size_t r = 0; r < perm.size(); ++r)
    for (std::size_t c = 0; c < perm.size(); ++c)
      dfg.at(r, c) = dense[perm[r] * width + perm[c]];
  return dfg;
}

void write_dfg_csv(const DFGMatrix& dfg, std::ostream& sink) {
  const auto& labels = dfg.labels();
  for (const auto& l : labels) sink << ',' << l.str();
  sink << '\n';
  for (std::size_t r = 0; r < labels.size(); ++r) {
    sink << labels[r].str();
    for (std::size_t c = 0; c < labels.size(); ++c) sink << ',' << dfg.at(r, c);
    sink << '\n';
  }
  if (!sink) throw Error(ErrorKind::kIo, "failed writing DFG");
}

nlohmann::ordered_json to_json(const DFGMatrix& dfg) {
  nlohmann::ordered_json labels = nlohmann::ordered_json::array();
  nlohmann::ordered_json counts = nlohmann::ordered_json::array();
  for (const auto& l : dfg.labels()) labels.push_back(l.str());
  for (std::size_t r = 0; r < dfg.size(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < dfg.size(); ++c) row.push_back(dfg.at(r, c));
    counts.push_back(std::move(row));
  }
  return nlohmann::ordered_json{{"labels", labels}, {"counts", counts}};
}

// ---------------------------------------------------------------------------

VariantRanking rank_variants(std::span<const Trace> traces) {
  LabelInterner interner;
  std::unordered_map<std::u32string, std::size_t> freq;
  for (const Trace& t : traces) ++freq[variant_key(t, interner)];

  VariantRanking ranking;
  ranking.entries.reserve(freq.size());
  const auto& labels = interner.labels();
  for (const auto& [key, count] : freq) {
    VariantEntry entry;
    entry.frequency = count;
    entry.sequence.reserve(key.size());
    for (char32_t id : key) entry.sequence.push_back(labels[id]);
    ranking.entries.push_back(std::move(entry));
  }
  std::sort(ranking.entries.begin(), ranking.entries.end(),
            [](const VariantEntry& a, const VariantEntry& b) {
              if (a.frequency != b.frequency) return a.frequency > b.frequency;
              return a.sequence < b.sequence;
            });
  return ranking;
}

VariantRanking top_k_variants(std::span<const Trace> traces, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::kInvalidArgument, "k must be at least 1");
  VariantRanking ranking = rank_variants(traces);
  if (ranking.entries.size() > k) ranking.entries.resize(k);
  return ranking;
}

std::string render_entry(const VariantEntry& entry) {
  return render_variant(entry.sequence) + " " + std::to_string(entry.frequency);
}

// ---------------------------------------------------------------------------

BucketKind parse_bucket_kind(std::string_view text) {
  if (text == "month") return BucketKind::kMonth;
  if (text == "fortnight") return BucketKind::kFortnight;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown bucket kind '" + std::string(text) + "' (month|fortnight)");
}

std::string_view to_string(BucketKind kind) {
  return kind == BucketKind::kMonth ? "month" : "fortnight";
}

std::size_t TemporalHistogram::total() const {
  std::size_t sum = 0;
  for (const auto& [start, count] : buckets) sum += count;
  return sum;
}

TemporalHistogram temporal_histogram(const EventLog& log, const ActivityLabel& activity,
                                     BucketKind kind, const PeriodWindow& window) {
  window.validate();
  TemporalHistogram h;
  h.activity = activity;
  h.bucket_kind = kind;
  const Day first = window.first_day();
  const Day last = window.last_day();
  if (last < first) return h;

  auto month_index = [](Day d) { return d.year() * 12 + static_cast<int>(d.month()) - 1; };
  if (kind == BucketKind::kMonth) {
    h.buckets.emplace_back(first, 0);
    for (int m = month_index(first) + 1; m <= month_index(last); ++m)
      h.buckets.emplace_back(*Day::from_ymd(m / 12, static_cast<unsigned>(m % 12) + 1, 1), 0);
  } else {
    for (Day d = first; d <= last; d = d + 14) h.buckets.emplace_back(d, 0);
  }

  for (const Event& e : log) {
    if (e.date < first || last < e.date || e.activity != activity) continue;
    const std::size_t slot =
        kind == BucketKind::kMonth
            ? static_cast<std::size_t>(month_index(e.date) - month_index(first))
            : static_cast<std::size_t>((e.date - first) / 14);
    ++h.buckets[slot].second;
  }
  return h;
}

void write_histogram_csv(const TemporalHistogram& histogram, std::ostream& sink) {
  sink << "bucket_start,count\n";
  for (const auto& [start, count] : histogram.buckets)
    sink << start.iso() << ',' << count << '\n';
  if (!sink) throw Error(ErrorKind::kIo, "failed writing histogram");
}

std::map<ActivityLabel, std::size_t> activity_counts(const EventLog& log) {
  std::map<ActivityLabel, std::size_t> counts;
  for (const Event& e : log) ++counts[e.activity];
  return counts;
}

std::map<ActivityLabel, double> relative_frequencies(const EventLog& log) {
  if (log.empty())
    throw Error(ErrorKind::kEmptyInput, "relative frequencies of an empty log");
  std::map<ActivityLabel, double> out;
  for (const auto& [label, count] : activity_counts(log))
    out[label] = percentage(static_cast<double>(count), static_cast<double>(log.size()));
  return out;
}

}  // namespace pmkit
