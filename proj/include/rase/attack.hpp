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
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rase/shuffler.hpp"

namespace rase {

// Laplace profile of one contributor, fitted from raw history samples.
struct LaplaceProfile {
  double location;
  double scale;
};

struct AttackResult {
  int64_t true_positives = 0;
  int64_t false_positives = 0;
  int64_t false_negatives = 0;
  double precision = 0.0;
  double recall = 0.0;
  std::vector<int> contributor_slot;  // predicted slot (0-based) per contributor
};

constexpr int kMinHistorySamples = 10;

// location = median, scale = mean absolute deviation about the median (the
// Laplace maximum-likelihood fit), floored so constant histories stay usable.
inline std::vector<LaplaceProfile> FitProfiles(const std::vector<std::vector<double>>& history,
                                               double scale_floor = 1e-6) {
  if (history.empty()) throw std::invalid_argument("FitProfiles: empty history");
  std::vector<LaplaceProfile> profiles;
  profiles.reserve(history.size());
  for (const auto& samples : history) {
    if (static_cast<int>(samples.size()) < kMinHistorySamples) {
      throw std::invalid_argument("FitProfiles: every contributor needs at least " +
                                  std::to_string(kMinHistorySamples) + " history samples");
    }
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const size_t n = sorted.size();
    const double median =
        n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    double deviation = 0.0;
    for (double v : sorted) deviation += std::abs(v - median);
    profiles.push_back({median, std::max(deviation / static_cast<double>(n), scale_floor)});
  }
  return profiles;
}

// Minimum-cost perfect matching on a square cost matrix (Hungarian algorithm
// with potentials, O(n^3)). Returns the column assigned to each row.
inline std::vector<int> SolveAssignment(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  if (n == 0) throw std::invalid_argument("SolveAssignment: empty cost matrix");
  for (const auto& row : cost) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("SolveAssignment: cost matrix must be square");
    }
  }
  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> row_potential(n + 1, 0.0), col_potential(n + 1, 0.0);
  std::vector<int> col_match(n + 1, 0);   // col -> row matched to it
  std::vector<int> col_parent(n + 1, 0);  // alternating-path bookkeeping

  for (int row = 1; row <= n; ++row) {
    col_match[0] = row;
    int current_col = 0;
    std::vector<double> min_slack(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[current_col] = true;
      const int current_row = col_match[current_col];
      double best_delta = kInf;
      int next_col = 0;
      for (int col = 1; col <= n; ++col) {
        if (used[col]) continue;
        const double slack = cost[current_row - 1][col - 1] - row_potential[current_row] -
                             col_potential[col];
        if (slack < min_slack[col]) {
          min_slack[col] = slack;
          col_parent[col] = current_col;
        }
        if (min_slack[col] < best_delta) {
          best_delta = min_slack[col];
          next_col = col;
        }
      }
      for (int col = 0; col <= n; ++col) {
        if (used[col]) {
          row_potential[col_match[col]] += best_delta;
          col_potential[col] -= best_delta;
        } else {
          min_slack[col] -= best_delta;
        }
      }
      current_col = next_col;
    } while (col_match[current_col] != 0);
    // Unwind the alternating path.
    while (current_col != 0) {
      const int previous_col = col_parent[current_col];
      col_match[current_col] = col_match[previous_col];
      current_col = previous_col;
    }
  }

  std::vector<int> row_to_col(n);
  for (int col = 1; col <= n; ++col) {
    if (col_match[col] != 0) row_to_col[col_match[col] - 1] = col - 1;
  }
  return row_to_col;
}

// Cheaper fallback: repeatedly take the globally cheapest unassigned
// (row, col) cell. Still one-to-one, not optimal.
inline std::vector<int> GreedyAssignment(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  if (n == 0) throw std::invalid_argument("GreedyAssignment: empty cost matrix");
  std::vector<int> row_to_col(n, -1);
  std::vector<bool> row_done(n, false), col_done(n, false);
  for (int step = 0; step < n; ++step) {
    double best = std::numeric_limits<double>::infinity();
    int best_row = -1, best_col = -1;
    for (int row = 0; row < n; ++row) {
      if (row_done[row]) continue;
      for (int col = 0; col < n; ++col) {
        if (col_done[col]) continue;
        if (cost[row][col] < best) {
          best = cost[row][col];
          best_row = row;
          best_col = col;
        }
      }
    }
    row_to_col[best_row] = best_col;
    row_done[best_row] = true;
    col_done[best_col] = true;
  }
  return row_to_col;
}

// Re-identification baseline: a linkage adversary that knows each
// contributor's value distribution. It accumulates per-(contributor, slot)
// negative log-likelihood over all observed batches, links contributors to
// slots one-to-one, and applies that static linkage to every batch. Stable
// slots (no shuffling) concentrate evidence; shuffling spreads each slot over
// all contributors and starves the linkage.
//
// truth[t][j] is the contributor (1-based) whose value sits at slot j of batch
// t; it is consulted only to score the prediction.
inline AttackResult LinkageAttack(const std::vector<std::vector<double>>& history,
                                  const std::vector<ShuffledBatch>& batches,
                                  const std::vector<std::vector<int>>& truth,
                                  bool greedy = false, double scale_floor = 1e-6) {
  const auto profiles = FitProfiles(history, scale_floor);
  const int n = static_cast<int>(profiles.size());
  if (batches.empty()) throw std::invalid_argument("LinkageAttack: no batches");
  if (truth.size() != batches.size()) {
    throw std::invalid_argument("LinkageAttack: truth size mismatch");
  }

  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (const auto& batch : batches) {
    if (static_cast<int>(batch.values.size()) != n) {
      throw std::invalid_argument("LinkageAttack: batch size mismatch");
    }
    for (int contributor = 0; contributor < n; ++contributor) {
      const auto& profile = profiles[contributor];
      const double log_norm = std::log(2.0 * profile.scale);
      for (int slot = 0; slot < n; ++slot) {
        cost[contributor][slot] +=
            std::abs(batch.values[slot] - profile.location) / profile.scale + log_norm;
      }
    }
  }

  AttackResult result;
  result.contributor_slot = greedy ? GreedyAssignment(cost) : SolveAssignment(cost);

  for (size_t t = 0; t < batches.size(); ++t) {
    if (static_cast<int>(truth[t].size()) != n) {
      throw std::invalid_argument("LinkageAttack: truth row size mismatch");
    }
    for (int contributor = 0; contributor < n; ++contributor) {
      const int claimed_slot = result.contributor_slot[contributor];
      if (truth[t][claimed_slot] == contributor + 1) {
        ++result.true_positives;
      } else {
        ++result.false_positives;  // claimed someone else's value
        ++result.false_negatives;  // own value went unclaimed or misclaimed
      }
    }
  }
  const double tp = static_cast<double>(result.true_positives);
  result.precision = tp / static_cast<double>(result.true_positives + result.false_positives);
  result.recall = tp / static_cast<double>(result.true_positives + result.false_negatives);
  return result;
}

}  // namespace rase
