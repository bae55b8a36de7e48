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

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rase/attack.hpp"
#include "rase/errors.hpp"
#include "rase/estimator.hpp"
#include "rase/grouping.hpp"
#include "rase/metrics.hpp"
#include "rase/permutation.hpp"
#include "rase/randomizer.hpp"
#include "rase/rng.hpp"
#include "rase/shuffler.hpp"

namespace rase {

// One contributor's reading: (State, ID, Time).
struct SensorReading {
  int contributor_id;  // 1-based
  int64_t timestamp;   // logical time, positive
  double state;        // measured quantity, within the configured range
};

struct RunConfig {
  int n;
  DataRange range;
  PrecisionRequirement precision;
  PrivacyBudget budget;
  int k;
  ContributorGraph graph;
  EstimatorMethod estimator = EstimatorMethod::kSample;
  int bootstrap_b = 200;
  uint64_t seed = 0;
  std::optional<int> window_w;
};

inline void ValidateRunConfig(const RunConfig& config) {
  if (config.n < 2) throw ConfigError("config field 'n': need at least 2 contributors");
  if (config.k < 1 || config.k > config.n) {
    throw ConfigError("config field 'k': must lie in [1, n]");
  }
  if (config.graph.n != config.n) {
    throw ConfigError("config field 'graph.n': must equal 'n'");
  }
  if (config.bootstrap_b < 1) {
    throw ConfigError("config field 'bootstrap_b': must be at least 1");
  }
  if (config.window_w && *config.window_w < 1) {
    throw ConfigError("config field 'window_w': must be at least 1");
  }
}

// Stage tags keeping the per-(stage, timestamp, contributor) substreams
// disjoint, so parallel evaluation order can never change a result.
inline constexpr uint64_t kArrivalStage = 0xA1;
inline constexpr uint64_t kRandomizeStage = 0xB2;
inline constexpr uint64_t kShuffleStage = 0xC3;
inline constexpr uint64_t kEstimateStage = 0xD4;

// First-come-first-serve arrival order, fixed for the whole run: contributors
// keep their arrival slots across timestamps unless the shuffler intervenes.
inline Permutation ArrivalPermutation(const RunConfig& config) {
  RandomStream rng(DeriveSeed(config.seed, {kArrivalStage}));
  std::vector<int> line(config.n);
  for (int i = 0; i < config.n; ++i) line[i] = i + 1;
  for (int i = config.n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.NextBelow(static_cast<uint64_t>(i + 1)));
    std::swap(line[i], line[j]);
  }
  return Permutation::FromOneLine(std::move(line));
}

struct TimestepResult {
  int64_t timestamp;
  ShuffledBatch batch;
  EstimateReport estimate;
  ShuffleBranch branch_used;
  std::vector<int> slot_contributor;  // truth: contributor (1-based) at each output slot
  std::vector<double> raw_states;     // contributor order
  std::vector<double> noisy_states;   // contributor order, before shuffling
  double aae;
  double mse;
};

// One timestamp of the randomize-shuffle-estimate pipeline. Expects exactly
// one reading per contributor, all stamped with the same timestamp.
inline TimestepResult RunRase(const std::vector<SensorReading>& readings_at_t,
                              const RunConfig& config) {
  ValidateRunConfig(config);
  const int n = config.n;
  if (static_cast<int>(readings_at_t.size()) != n) {
    throw DataError("expected " + std::to_string(n) + " readings, got " +
                    std::to_string(readings_at_t.size()));
  }

  const int64_t t = readings_at_t.front().timestamp;
  std::vector<double> raw(n, 0.0);
  std::vector<bool> seen(n + 1, false);
  for (const auto& reading : readings_at_t) {
    if (reading.timestamp != t) {
      throw DataError("mixed timestamps in one batch: " + std::to_string(t) + " vs " +
                      std::to_string(reading.timestamp));
    }
    if (reading.contributor_id < 1 || reading.contributor_id > n) {
      throw DataError("contributor id " + std::to_string(reading.contributor_id) +
                      " out of range at timestamp " + std::to_string(t));
    }
    if (seen[reading.contributor_id]) {
      throw DataError("duplicate contributor " + std::to_string(reading.contributor_id) +
                      " at timestamp " + std::to_string(t));
    }
    seen[reading.contributor_id] = true;
    raw[reading.contributor_id - 1] = reading.state;
  }

  // Randomize locally, one derived stream per contributor.
  std::vector<double> noisy(n);
  for (int i = 1; i <= n; ++i) {
    RandomStream stream(DeriveSeed(config.seed, {kRandomizeStage, static_cast<uint64_t>(t),
                                                 static_cast<uint64_t>(i)}));
    try {
      noisy[i - 1] = Randomize(raw[i - 1], config.budget, config.range, config.precision, stream);
    } catch (const std::invalid_argument& error) {
      throw DataError("contributor " + std::to_string(i) + " at timestamp " + std::to_string(t) +
                      ": " + error.what());
    }
  }

  // Assemble the arrival-ordered sequence and shuffle it.
  const Permutation arrival = ArrivalPermutation(config);
  std::vector<double> arrival_values(n);
  for (int i = 1; i <= n; ++i) arrival_values[arrival.Image(i) - 1] = noisy[i - 1];
  RandomStream shuffle_stream(DeriveSeed(config.seed, {kShuffleStage, static_cast<uint64_t>(t)}));
  const ShuffleResult shuffled = Shuffle(NoisyBatch{arrival_values, arrival, t}, config.k,
                                         config.graph, config.budget.alpha, shuffle_stream);

  TimestepResult result{t,
                        shuffled.batch,
                        {},
                        shuffled.batch.branch_used,
                        std::vector<int>(n),
                        std::move(raw),
                        std::move(noisy),
                        0.0,
                        0.0};
  for (int j = 1; j <= n; ++j) {
    result.slot_contributor[j - 1] = arrival.Preimage(shuffled.sigma_star.Image(j));
  }

  RandomStream estimate_stream(
      DeriveSeed(config.seed, {kEstimateStage, static_cast<uint64_t>(t)}));
  result.estimate =
      Estimate(config.estimator, result.batch.values, config.bootstrap_b, estimate_stream);

  // Utility metrics pair the raw and noisy values in contributor order; the
  // pre-shuffle pairing is harness-side knowledge and never feeds the attack.
  result.aae = Aae(result.raw_states, result.noisy_states);
  result.mse = Mse(result.raw_states, result.noisy_states);
  return result;
}

struct WindowResult {
  int64_t t_q;
  int w;
  double value;
};

struct PipelineRun {
  std::vector<TimestepResult> timesteps;
  std::map<int64_t, double> estimates;
  std::vector<WindowResult> windows;
  std::optional<AttackResult> attack;
  double mean_aae = 0.0;  // signed, averaged over timesteps
  double mean_mse = 0.0;
};

// Runs every complete batch through the pipeline, evaluates windowed queries
// when configured, and scores the linkage attack against the run's own trace
// whenever the history is long enough to fit profiles.
inline PipelineRun RunPipeline(const std::map<int64_t, std::vector<SensorReading>>& batches,
                               const RunConfig& config) {
  ValidateRunConfig(config);
  if (batches.empty()) throw DataError("no complete batches to process");

  PipelineRun run;
  std::vector<std::vector<double>> history(config.n);
  std::vector<ShuffledBatch> shuffled;
  std::vector<std::vector<int>> truth;
  for (const auto& [t, readings] : batches) {
    TimestepResult step = RunRase(readings, config);
    run.estimates[t] = step.estimate.estimate;
    run.mean_aae += step.aae;
    run.mean_mse += step.mse;
    for (int i = 0; i < config.n; ++i) history[i].push_back(step.raw_states[i]);
    shuffled.push_back(step.batch);
    truth.push_back(step.slot_contributor);
    run.timesteps.push_back(std::move(step));
  }
  run.mean_aae /= static_cast<double>(run.timesteps.size());
  run.mean_mse /= static_cast<double>(run.timesteps.size());

  if (config.window_w) {
    const int w = *config.window_w;
    for (const auto& [t_q, unused] : run.estimates) {
      bool complete = true;
      for (int64_t t = t_q - w + 1; t <= t_q && complete; ++t) {
        complete = run.estimates.count(t) > 0;
      }
      if (complete) run.windows.push_back({t_q, w, WindowQuery(run.estimates, t_q, w)});
    }
  }

  if (static_cast<int>(run.timesteps.size()) >= kMinHistorySamples) {
    run.attack = LinkageAttack(history, shuffled, truth);
  }
  return run;
}

}  // namespace rase
