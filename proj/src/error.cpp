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

#include "pmkit/error.hpp"

#include <algorithm>

namespace pmkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return "io";
    case ErrorKind::kSchema: return "schema";
    case ErrorKind::kRejectThreshold: return "reject-threshold";
    case ErrorKind::kXes: return "xes";
    case ErrorKind::kUnknownLabel: return "unknown-label";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kEmptyInput: return "empty-input";
  }
  return "unknown";
}

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

std::string unknown_label_message(const std::vector<std::string>& labels) {
  std::string msg = "unknown activity label(s) not in activity order: ";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) msg += ", ";
    msg += labels[i];
  }
  return msg;
}

}  // namespace

UnknownLabelError::UnknownLabelError(std::vector<std::string> labels)
    : Error(ErrorKind::kUnknownLabel,
            unknown_label_message(sorted_unique(labels))),
      labels_(sorted_unique(std::move(labels))) {}

}  // namespace pmkit
