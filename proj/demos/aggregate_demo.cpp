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

// Minimal end-to-end use of the library: synthesize one timestamp of sensor
// readings, push it through randomize-shuffle-estimate, and print what the
// fusion center would see.

#include <iostream>

#include "rase/rase.hpp"

int main() {
  const int n = 16;
  rase::RunConfig config{n,
                         rase::DataRange(3.9, 178.3),
                         rase::PrecisionRequirement(0.5, 0.9),
                         rase::PrivacyBudget(2.0, 30.0),
                         /*k=*/4,
                         rase::ContributorGraph(n, {}),
                         rase::EstimatorMethod::kMle,
                         /*bootstrap_b=*/200,
                         /*seed=*/7,
                         std::nullopt};

  const auto rows = rase::SynthTrace(n, 1, config.range, config.seed);
  std::vector<rase::SensorReading> readings;
  for (const auto& row : rows) readings.push_back({row.device_id, row.timestamp, row.value});

  const auto step = rase::RunRase(readings, config);

  double true_mean = 0.0;
  for (const auto& reading : readings) true_mean += reading.state;
  true_mean /= n;

  std::cout << "true mean      : " << true_mean << "\n";
  std::cout << "estimate (mle) : " << step.estimate.estimate << "\n";
  std::cout << "branch         : " << rase::ShuffleBranchName(step.branch_used) << "\n";
  std::cout << "anonymized     :";
  for (double v : step.batch.values) std::cout << " " << v;
  std::cout << "\n";
  return 0;
}
