// Copyright 2026 The RASE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rase/config.hpp"
#include "rase/errors.hpp"
#include "rase/pipeline.hpp"
#include "rase/trace.hpp"

namespace rase {

// Assembles the run report. nlohmann::json keeps object keys sorted, which
// makes reports byte-stable for identical runs. The per-timestep "assignment"
// array is the simulator's ground truth (contributor at each output slot); it
// exists so a stored report can be attacked and scored offline.
inline nlohmann::json BuildRunReport(const PipelineRun& run, const RunConfig& config,
                                     const std::vector<RejectedTimestamp>& rejected) {
  nlohmann::json report;
  report["config"] = RunConfigToJson(config);
  report["seed"] = config.seed;

  nlohmann::json timesteps = nlohmann::json::array();
  for (const auto& step : run.timesteps) {
    nlohmann::json entry;
    entry["t"] = step.timestamp;
    entry["estimate"] = step.estimate.estimate;
    entry["branch_used"] = ShuffleBranchName(step.branch_used);
    entry["aae"] = step.aae;
    entry["mse"] = step.mse;
    entry["values"] = step.batch.values;
    entry["assignment"] = step.slot_contributor;
    timesteps.push_back(std::move(entry));
  }
  report["timesteps"] = std::move(timesteps);

  report["aae_mean"] = run.mean_aae;
  report["mse_mean"] = run.mean_mse;
  if (run.attack) {
    report["precision"] = run.attack->precision;
    report["recall"] = run.attack->recall;
  } else {
    report["precision"] = nullptr;
    report["recall"] = nullptr;
  }

  nlohmann::json windows = nlohmann::json::array();
  for (const auto& window : run.windows) {
    windows.push_back({{"t_q", window.t_q}, {"w", window.w}, {"value", window.value}});
  }
  report["window_queries"] = std::move(windows);

  nlohmann::json rejects = nlohmann::json::array();
  for (const auto& reject : rejected) {
    rejects.push_back({{"t", reject.timestamp}, {"reason", reject.reason}});
  }
  report["rejected_timestamps"] = std::move(rejects);
  return report;
}

inline void WriteJsonFile(const std::string& path, const nlohmann::json& json) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open output file for writing: " + path);
  out << json.dump(2) << "\n";
  if (!out) throw DataError("failed while writing output file: " + path);
}

inline nlohmann::json LoadJsonFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  nlohmann::json json;
  try {
    in >> json;
  } catch (const nlohmann::json::exception& error) {
    throw DataError("JSON parse error in " + path + ": " + error.what());
  }
  return json;
}

}  // namespace rase
