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

#include "pmkit/compare.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "format_util.hpp"
#include "pmkit/analytics.hpp"
#include "pmkit/error.hpp"

namespace pmkit {

std::string_view to_string(RuleKind kind) {
  return kind == RuleKind::kConditional ? "conditional" : "unconditional";
}

std::string_view to_string(FavoredLog favored) {
  switch (favored) {
    case FavoredLog::kX: return "X";
    case FavoredLog::kY: return "Y";
    case FavoredLog::kNone: return "none";
  }
  return "none";
}

namespace {

// Trace-presence counts over a shared activity index.
struct PresenceCounts {
  std::size_t traces = 0;
  std::vector<std::size_t> single;  // traces containing x
  std::vector<std::size_t> joint;   // traces containing both x and y, k*k

  PresenceCounts(std::span<const Trace> input,
                 const std::vector<std::string>& activities) {
    const std::size_t k = activities.size();
    single.assign(k, 0);
    joint.assign(k * k, 0);
    traces = input.size();
    std::vector<char> seen(k, 0);
    std::vector<std::size_t> present;
    for (const Trace& t : input) {
      present.clear();
      for (const Event& e : t.events) {
        const auto it = std::lower_bound(activities.begin(), activities.end(),
                                         e.activity.str());
        const auto id = static_cast<std::size_t>(it - activities.begin());
        if (!seen[id]) {
          seen[id] = 1;
          present.push_back(id);
        }
      }
      for (std::size_t x : present) {
        ++single[x];
        for (std::size_t y : present) ++joint[x * k + y];
      }
      for (std::size_t x : present) seen[x] = 0;
    }
  }

  double support(std::size_t x) const {
    return traces ? static_cast<double>(single[x]) / static_cast<double>(traces) : 0.0;
  }
};

std::vector<std::string> union_of_activities(std::span<const Trace> a,
                                             std::span<const Trace> b) {
  std::set<std::string> all;
  for (auto set : {a, b})
    for (const Trace& t : set)
      for (const Event& e : t.events) all.insert(e.activity.str());
  return {all.begin(), all.end()};
}

// Probabilities hit/of_x and other/of_y. The delta is formed from one
// integer quotient so mathematically equal deltas compare equal.
CooccurrenceRule make_rule(RuleKind kind, std::optional<ActivityLabel> antecedent,
                           ActivityLabel consequent, std::size_t hit_x, std::size_t of_x,
                           std::size_t hit_y, std::size_t of_y) {
  CooccurrenceRule r;
  r.kind = kind;
  r.antecedent = std::move(antecedent);
  r.consequent = std::move(consequent);
  r.prob_x = static_cast<double>(hit_x) / static_cast<double>(of_x);
  r.prob_y = static_cast<double>(hit_y) / static_cast<double>(of_y);
  const auto lhs = static_cast<unsigned __int128>(hit_x) * of_y;
  const auto rhs = static_cast<unsigned __int128>(hit_y) * of_x;
  const auto diff = lhs > rhs ? lhs - rhs : rhs - lhs;
  const auto den = static_cast<unsigned __int128>(of_x) * of_y;
  r.delta_pp = static_cast<double>(diff * 100) / static_cast<double>(den);
  r.favored = lhs > rhs ? FavoredLog::kX : (rhs > lhs ? FavoredLog::kY : FavoredLog::kNone);
  return r;
}

}  // namespace

std::vector<CooccurrenceRule> cooccurrence_diff(std::span<const Trace> traces_x,
                                                std::span<const Trace> traces_y,
                                                const CooccurrenceOptions& options) {
  if (traces_x.empty() || traces_y.empty())
    throw Error(ErrorKind::kEmptyInput, "co-occurrence diff needs two non-empty trace sets");
  if (options.top_n == 0)
    throw Error(ErrorKind::kInvalidArgument, "top_n must be at least 1");

  const auto activities = union_of_activities(traces_x, traces_y);
  const std::size_t k = activities.size();
  const PresenceCounts cx(traces_x, activities);
  const PresenceCounts cy(traces_y, activities);

  std::vector<CooccurrenceRule> rules;
  for (std::size_t x = 0; x < k; ++x) {
    const bool supported = cx.single[x] > 0 && cy.single[x] > 0 &&
                           cx.support(x) >= options.min_support &&
                           cy.support(x) >= options.min_support;
    if (!supported) continue;
    for (std::size_t y = 0; y < k; ++y) {
      if (x == y) continue;
      rules.push_back(make_rule(RuleKind::kConditional, ActivityLabel(activities[x]),
                                ActivityLabel(activities[y]), cx.joint[x * k + y],
                                cx.single[x], cy.joint[x * k + y], cy.single[x]));
    }
  }
  for (std::size_t y = 0; y < k; ++y)
    rules.push_back(make_rule(RuleKind::kUnconditional, std::nullopt,
                              ActivityLabel(activities[y]), cx.single[y], cx.traces,
                              cy.single[y], cy.traces));

  std::erase_if(rules, [&](const CooccurrenceRule& r) {
    return r.delta_pp < options.min_delta_pp;
  });
  std::sort(rules.begin(), rules.end(),
            [](const CooccurrenceRule& a, const CooccurrenceRule& b) {
              if (a.delta_pp != b.delta_pp) return a.delta_pp > b.delta_pp;
              if (a.kind != b.kind) return a.kind < b.kind;
              if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
              return a.consequent < b.consequent;
            });
  if (rules.size() > options.top_n) rules.resize(options.top_n);
  return rules;
}

std::string render_rule(const CooccurrenceRule& rule, std::string_view name_x,
                        std::string_view name_y) {
  const bool y_first = rule.favored == FavoredLog::kY;
  std::string out = "In ";
  out += y_first ? name_y : name_x;
  out += " it is " + detail::fixed(rule.delta_pp, 2) + "% more likely than ";
  out += y_first ? name_x : name_y;
  if (rule.kind == RuleKind::kConditional && rule.antecedent) {
    out += " that if [" + rule.antecedent->str() + "] occurs, also [" +
           rule.consequent.str() + "] occurs";
  } else {
    out += " that [" + rule.consequent.str() + "] occurs in a process instance";
  }
  return out;
}

void write_rules_csv(std::span<const CooccurrenceRule> rules, std::ostream& sink) {
  sink << "kind,antecedent,consequent,p_x,p_y,delta_pp,favored\n";
  for (const auto& r : rules) {
    sink << to_string(r.kind) << ',' << (r.antecedent ? r.antecedent->str() : "") << ','
         << r.consequent.str() << ',' << detail::fixed(r.prob_x, 6) << ','
         << detail::fixed(r.prob_y, 6) << ',' << detail::fixed(r.delta_pp, 2) << ','
         << to_string(r.favored) << '\n';
  }
  if (!sink) throw Error(ErrorKind::kIo, "failed writing rules");
}

nlohmann::ordered_json to_json(std::span<const CooccurrenceRule> rules) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& r : rules) {
    out.push_back({
        {"kind", to_string(r.kind)},
        {"antecedent", r.antecedent ? nlohmann::ordered_json(r.antecedent->str())
                                    : nlohmann::ordered_json(nullptr)},
        {"consequent", r.consequent.str()},
        {"p_x", r.prob_x},
        {"p_y", r.prob_y},
        {"delta_pp", round_to(r.delta_pp, 2)},
        {"favored", to_string(r.favored)},
    });
  }
  return out;
}

// ---------------------------------------------------------------------------

Aggregate parse_aggregate(std::string_view text) {
  if (text == "single") return Aggregate::kSingle;
  if (text == "mean") return Aggregate::kMean;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown aggregate '" + std::string(text) + "' (single|mean)");
}

ChangeReport change_report(const ActivityCounts& reference,
                           std::span<const ActivityCounts> baselines,
                           Aggregate aggregate) {
  if (baselines.empty())
    throw Error(ErrorKind::kInvalidArgument, "change report needs at least one baseline");
  if (aggregate == Aggregate::kSingle && baselines.size() != 1)
    throw Error(ErrorKind::kInvalidArgument,
                "aggregate 'single' takes exactly one baseline");

  std::set<std::string> activities;
  for (const auto& [a, c] : reference) activities.insert(a);
  for (const auto& b : baselines)
    for (const auto& [a, c] : b) activities.insert(a);

  ChangeReport report;
  for (const std::string& a : activities) {
    ActivityChange change;
    if (auto it = reference.find(a); it != reference.end()) change.count_reference = it->second;
    double sum = 0.0;
    for (const auto& b : baselines)
      if (auto it = b.find(a); it != b.end()) sum += it->second;
    change.count_baseline = sum / static_cast<double>(baselines.size());
    if (change.count_baseline != 0.0)
      change.change_pct = 100.0 * (change.count_reference - change.count_baseline) /
                          change.count_baseline;
    report.per_activity.emplace(a, change);
  }
  return report;
}

void write_change_csv(const ChangeReport& report, std::ostream& sink) {
  sink << "activity,count_reference,count_baseline,change_pct\n";
  for (const auto& [a, c] : report.per_activity) {
    sink << a << ',' << detail::compact(c.count_reference, 2) << ','
         << detail::compact(c.count_baseline, 2) << ','
         << (c.change_pct ? detail::fixed(*c.change_pct, 1) : std::string()) << '\n';
  }
  if (!sink) throw Error(ErrorKind::kIo, "failed writing change report");
}

nlohmann::ordered_json to_json(const ChangeReport& report) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& [a, c] : report.per_activity) {
    out.push_back({
        {"activity", a},
        {"count_reference", c.count_reference},
        {"count_baseline", c.count_baseline},
        {"change_pct", c.change_pct ? nlohmann::ordered_json(round_to(*c.change_pct, 1))
                                    : nlohmann::ordered_json(nullptr)},
    });
  }
  return out;
}

}  // namespace pmkit
