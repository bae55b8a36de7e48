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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rase/rng.hpp"

namespace rase {

enum class EstimatorMethod { kSample, kMle, kBootstrap };

inline std::string EstimatorMethodName(EstimatorMethod method) {
  switch (method) {
    case EstimatorMethod::kSample:
      return "sample";
    case EstimatorMethod::kMle:
      return "mle";
    case EstimatorMethod::kBootstrap:
      return "bootstrap";
  }
  throw std::logic_error("EstimatorMethodName: unknown method");
}

inline EstimatorMethod ParseEstimatorMethod(const std::string& name) {
  if (name == "sample") return EstimatorMethod::kSample;
  if (name == "mle") return EstimatorMethod::kMle;
  if (name == "bootstrap") return EstimatorMethod::kBootstrap;
  throw std::invalid_argument("unknown estimator '" + name +
                              "' (expected sample, mle or bootstrap)");
}

struct EstimateReport {
  EstimatorMethod method;
  double estimate;
  int n;
  std::optional<int> bootstrap_b;
};

inline double SampleMean(const std::vector<double>& z) {
  if (z.empty()) throw std::invalid_argument("SampleMean: empty input");
  double sum = 0.0;
  for (double v : z) sum += v;
  return sum / static_cast<double>(z.size());
}

// Maximum-likelihood mean under a common Laplace scale: the minimizer of
// sum |z_i - mu|, i.e. the sample median. Even n takes the midpoint of the two
// central order statistics.
inline double MleMean(const std::vector<double>& z) {
  if (z.empty()) throw std::invalid_argument("MleMean: empty input");
  std::vector<double> sorted = z;
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

// Deterministic bootstrap core: each resample is given as 0-based indices
// into z. Exposed so fixed resamples can be injected in tests.
inline double BootstrapMeanFromIndices(const std::vector<double>& z,
                                       const std::vector<std::vector<int>>& resample_indices) {
  if (z.empty()) throw std::invalid_argument("BootstrapMeanFromIndices: empty input");
  if (resample_indices.empty()) {
    throw std::invalid_argument("BootstrapMeanFromIndices: no resamples");
  }
  double total = 0.0;
  for (const auto& indices : resample_indices) {
    if (indices.size() != z.size()) {
      throw std::invalid_argument("BootstrapMeanFromIndices: resample size mismatch");
    }
    double sum = 0.0;
    for (int index : indices) {
      if (index < 0 || index >= static_cast<int>(z.size())) {
        throw std::invalid_argument("BootstrapMeanFromIndices: index out of range");
      }
      sum += z[index];
    }
    total += sum / static_cast<double>(z.size());
  }
  return total / static_cast<double>(resample_indices.size());
}

// Draws b resamples of size n uniformly with replacement, averages each, and
// returns the mean of the resample averages.
inline double BootstrapMean(const std::vector<double>& z, int b, RandomStream& rng) {
  if (z.empty()) throw std::invalid_argument("BootstrapMean: empty input");
  if (b < 1) throw std::invalid_argument("BootstrapMean: b must be at least 1");
  const size_t n = z.size();
  double total = 0.0;
  for (int sample = 0; sample < b; ++sample) {
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i) {
      sum += z[rng.NextBelow(n)];
    }
    total += sum / static_cast<double>(n);
  }
  return total / static_cast<double>(b);
}

inline EstimateReport Estimate(EstimatorMethod method, const std::vector<double>& z,
                               int bootstrap_b, RandomStream& rng) {
  EstimateReport report;
  report.method = method;
  report.n = static_cast<int>(z.size());
  switch (method) {
    case EstimatorMethod::kSample:
      report.estimate = SampleMean(z);
      break;
    case EstimatorMethod::kMle:
      report.estimate = MleMean(z);
      break;
    case EstimatorMethod::kBootstrap:
      report.estimate = BootstrapMean(z, bootstrap_b, rng);
      report.bootstrap_b = bootstrap_b;
      break;
  }
  return report;
}

}  // namespace rase
