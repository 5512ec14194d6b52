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

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pmkit {

/// Error categories. The CLI maps each one to a distinct exit code.
enum class ErrorKind {
  kIo,
  kSchema,
  kRejectThreshold,
  kXes,
  kUnknownLabel,
  kPrecondition,
  kInvalidArgument,
  kEmptyInput,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when activities are not covered by an ActivityOrder. Carries every
/// offending label, sorted and deduplicated.
class UnknownLabelError : public Error {
 public:
  explicit UnknownLabelError(std::vector<std::string> labels);

  const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  std::vector<std::string> labels_;
};

}  // namespace pmkit
