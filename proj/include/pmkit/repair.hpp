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

#include "pmkit/event_model.hpp"

namespace pmkit {

/// Stable reorder by (date, activity rank) so that same-day activities
/// always appear in the imposed order. Runs in O(n + days * |order|) using
/// a counting sort over the combined key; falls back to a stable comparison
/// sort when the date span is very large relative to the log.
///
/// Throws UnknownLabelError listing every activity absent from the order.
EventLog repair_log(const EventLog& log, const ActivityOrder& order);

}  // namespace pmkit
