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

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "pmkit/error.hpp"
#include "pmkit/event_model.hpp"
#include "pmkit/ingest.hpp"
#include "pmkit/segmentation.hpp"

namespace pmkit {

/// Process exit codes. Stable; documented in `pmkit --help`.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitIo = 3,
  kExitSchema = 4,
  kExitRejectThreshold = 5,
  kExitXes = 6,
  kExitUnknownLabel = 7,
  kExitPrecondition = 8,
  kExitInvalidArgument = 9,
  kExitEmptyInput = 10,
};

int exit_code_for(ErrorKind kind);

/// Settings shared by the pipeline subcommands. Serializes to JSON so a run
/// can be recorded and replayed with --config.
struct PipelineConfig {
  ActivityOrder order = ActivityOrder::gp_default();
  SegmentationConfig segmentation;
  std::vector<PeriodWindow> windows;
  std::vector<std::string> inputs;
  std::string output;
  std::string format;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

nlohmann::ordered_json to_json(const PipelineConfig& config);
/// Missing keys keep their defaults. Throws Error(kInvalidArgument).
PipelineConfig pipeline_config_from_json(const nlohmann::ordered_json& json);

/// Entry point of the pmkit binary. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace pmkit
