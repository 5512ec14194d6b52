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

#include "pmkit/repair.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>

#include "pmkit/error.hpp"

namespace pmkit {

namespace {

std::vector<std::uint32_t> ranks_of(const EventLog& log, const ActivityOrder& order) {
  std::vector<std::uint32_t> ranks;
  ranks.reserve(log.size());
  std::set<std::string> unknown;
  // Consecutive events often share an activity; skip the hash lookup then.
  const std::string* last_label = nullptr;
  std::uint32_t last_rank = 0;
  for (const Event& e : log) {
    const std::string& label = e.activity.str();
    if (last_label && *last_label == label) {
      ranks.push_back(last_rank);
      continue;
    }
    if (auto r = order.find(label)) {
      last_label = &label;
      last_rank = static_cast<std::uint32_t>(*r);
      ranks.push_back(last_rank);
    } else {
      unknown.insert(label);
      ranks.push_back(0);
    }
  }
  if (!unknown.empty())
    throw UnknownLabelError(std::vector<std::string>(unknown.begin(), unknown.end()));
  return ranks;
}

}  // namespace

EventLog repair_log(const EventLog& log, const ActivityOrder& order) {
  const auto ranks = ranks_of(log, order);
  const std::size_t n = log.size();
  if (n == 0) return {};

  const auto [min_it, max_it] = std::minmax_element(
      log.begin(), log.end(),
      [](const Event& a, const Event& b) { return a.date < b.date; });
  const Day min_day = min_it->date;
  const std::uint64_t span =
      static_cast<std::uint64_t>(max_it->date - min_day) + 1;
  const std::uint64_t key_count = span * std::max<std::size_t>(order.size(), 1);

  // permutation[k] = input index of the k-th output event
  std::vector<std::size_t> permutation(n);
  if (key_count <= 4 * static_cast<std::uint64_t>(n) + 4096) {
    const std::size_t width = std::max<std::size_t>(order.size(), 1);
    std::vector<std::size_t> start(static_cast<std::size_t>(key_count) + 1, 0);
    std::vector<std::uint32_t> key(n);
    for (std::size_t i = 0; i < n; ++i) {
      key[i] = static_cast<std::uint32_t>(
          static_cast<std::size_t>(log[i].date - min_day) * width + ranks[i]);
      ++start[key[i] + 1];
    }
    std::partial_sum(start.begin(), start.end(), start.begin());
    for (std::size_t i = 0; i < n; ++i) permutation[start[key[i]]++] = i;
  } else {
    std::iota(permutation.begin(), permutation.end(), std::size_t{0});
    std::stable_sort(permutation.begin(), permutation.end(),
                     [&](std::size_t a, std::size_t b) {
                       if (log[a].date != log[b].date) return log[a].date < log[b].date;
                       return ranks[a] < ranks[b];
                     });
  }

  EventLog out;
  out.reserve(n);
  for (std::size_t i : permutation) out.push_back(log[i]);
  return out;
}

}  // namespace pmkit
