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

#include "pmkit/cli.hpp"

namespace pmkit {

nlohmann::ordered_json to_json(const PipelineConfig& config) {
  nlohmann::ordered_json order = nlohmann::ordered_json::array();
  for (const auto& l : config.order.labels()) order.push_back(l.str());
  nlohmann::ordered_json alpha = nlohmann::ordered_json::array();
  for (const auto& l : config.segmentation.start_activities) alpha.push_back(l.str());
  nlohmann::ordered_json windows = nlohmann::ordered_json::array();
  for (const auto& w : config.windows) windows.push_back(w.to_string());
  return nlohmann::ordered_json{
      {"order", order},
      {"segmentation",
       {{"start_activities", alpha},
        {"delta0_days", config.segmentation.delta0_days},
        {"deltaN_days", config.segmentation.deltaN_days}}},
      {"windows", windows},
      {"inputs", config.inputs},
      {"output", config.output},
      {"format", config.format},
  };
}

PipelineConfig pipeline_config_from_json(const nlohmann::ordered_json& json) {
  PipelineConfig config;
  try {
    if (!json.is_object())
      throw Error(ErrorKind::kInvalidArgument, "pipeline config must be a JSON object");
    if (json.contains("order")) {
      std::vector<ActivityLabel> labels;
      for (const auto& l : json.at("order")) labels.emplace_back(l.get<std::string>());
      config.order = ActivityOrder(std::move(labels));
    }
    if (json.contains("segmentation")) {
      const auto& seg = json.at("segmentation");
      if (seg.contains("start_activities")) {
        config.segmentation.start_activities.clear();
        for (const auto& l : seg.at("start_activities"))
          config.segmentation.start_activities.emplace(l.get<std::string>());
      }
      if (seg.contains("delta0_days"))
        config.segmentation.delta0_days = seg.at("delta0_days").get<std::int32_t>();
      if (seg.contains("deltaN_days"))
        config.segmentation.deltaN_days = seg.at("deltaN_days").get<std::int32_t>();
      config.segmentation.validate();
    }
    if (json.contains("windows"))
      for (const auto& w : json.at("windows"))
        config.windows.push_back(PeriodWindow::parse(w.get<std::string>()));
    if (json.contains("inputs"))
      config.inputs = json.at("inputs").get<std::vector<std::string>>();
    if (json.contains("output")) config.output = json.at("output").get<std::string>();
    if (json.contains("format")) config.format = json.at("format").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInvalidArgument, std::string("invalid pipeline config: ") + e.what());
  }
  return config;
}

}  // namespace pmkit
