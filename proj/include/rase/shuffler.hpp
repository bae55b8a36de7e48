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

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rase/grouping.hpp"
#include "rase/mallows.hpp"
#include "rase/permutation.hpp"
#include "rase/rng.hpp"

namespace rase {

// One timestamp's perturbed responses in arrival order, together with the data
// permutation sigma_y (arrival.Image(i) is the arrival slot of contributor i).
struct NoisyBatch {
  std::vector<double> values;
  Permutation arrival;
  int64_t timestamp;
};

enum class ShuffleBranch { kMallows, kUniformCycle };

inline std::string ShuffleBranchName(ShuffleBranch branch) {
  return branch == ShuffleBranch::kMallows ? "mallows" : "uniform_cycle";
}

// Anonymized output: the input values reordered, with no contributor
// identifiers. branch_used is diagnostic metadata only.
struct ShuffledBatch {
  std::vector<double> values;
  int64_t timestamp;
  ShuffleBranch branch_used;
};

// Full shuffle outcome. Everything beyond `batch` exists for the evaluation
// harness and tests; the fusion center only ever sees `batch`.
struct ShuffleResult {
  ShuffledBatch batch;
  Permutation sigma_star;        // batch.values = Apply(sigma_star, input values)
  int64_t initial_sensitivity;   // Delta over the graph-derived partition
  int64_t refined_sensitivity;   // Delta after refinement (mallows branch only)
  double theta;                  // dispersion used by the mallows branch, else 0
};

// Robust shuffler. Computes the sensitivity of the graph-derived partition
// and picks the branch on alpha <= Delta <= 10 alpha: inside the range the
// Mallows mechanism runs on refined groups with theta = alpha / Delta_refined
// (floored at 0.1); outside it, or when the refined sensitivity degenerates to
// zero, a uniform-cycle pass anonymizes the batch instead.
inline ShuffleResult Shuffle(const NoisyBatch& batch, int k, const ContributorGraph& graph,
                             double alpha, RandomStream& rng) {
  const int n = static_cast<int>(batch.values.size());
  if (n < 2) {
    throw std::invalid_argument("Shuffle: a batch of one cannot be anonymized");
  }
  if (batch.arrival.size() != n) {
    throw std::invalid_argument("Shuffle: arrival permutation size mismatch");
  }
  if (graph.n != n) {
    throw std::invalid_argument("Shuffle: graph size mismatch");
  }
  if (k < 1 || k > n) {
    throw std::invalid_argument("Shuffle: k must lie in [1, n]");
  }
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("Shuffle: alpha must be positive");
  }

  const Permutation& sigma_y = batch.arrival;
  const Partition initial = InitialPartition(graph, k);
  const int64_t initial_sensitivity = Sensitivity(sigma_y, initial);

  ShuffleResult result{ShuffledBatch{{}, batch.timestamp, ShuffleBranch::kUniformCycle},
                       Permutation::Identity(n), initial_sensitivity, 0, 0.0};

  bool mallows_done = false;
  if (alpha <= static_cast<double>(initial_sensitivity) &&
      static_cast<double>(initial_sensitivity) <= 10.0 * alpha) {
    const Partition refined = k == 1   ? Partition::Whole(n)
                              : k == n ? Partition::Singletons(n)
                                       : RefineGroups(sigma_y, k);
    const int64_t refined_sensitivity = Sensitivity(sigma_y, refined);
    if (refined_sensitivity > 0) {
      const double theta = std::max(alpha / static_cast<double>(refined_sensitivity), 0.1);
      const Permutation tau = Sample(MallowsParams(sigma_y, theta), rng);
      result.sigma_star = Compose(sigma_y.Inverse(), tau);
      result.refined_sensitivity = refined_sensitivity;
      result.theta = theta;
      result.batch.branch_used = ShuffleBranch::kMallows;
      mallows_done = true;
    }
    // refined_sensitivity == 0 would force theta to infinity; fall through to
    // the uniform-cycle branch instead of dividing by zero.
  }
  if (!mallows_done) {
    result.sigma_star = SattoloShuffle(sigma_y, rng);
    result.batch.branch_used = ShuffleBranch::kUniformCycle;
  }

  result.batch.values = Apply(result.sigma_star, batch.values);
  return result;
}

}  // namespace rase
