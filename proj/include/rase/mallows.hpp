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

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rase/permutation.hpp"
#include "rase/rng.hpp"

namespace rase {

// Mallows distribution over S_n under Kendall tau:
// Pr[sigma | center, theta] = exp(-theta * d_K(sigma, center)) / Z(theta).
struct MallowsParams {
  MallowsParams(Permutation center_in, double theta_in)
      : center(std::move(center_in)), theta(theta_in) {
    if (!(theta >= 0.0) || !std::isfinite(theta)) {
      throw std::invalid_argument("MallowsParams: theta must be finite and non-negative");
    }
  }

  Permutation center;
  double theta;
};

// log Z(theta) = sum_{i=1}^{n-1} log(sum_{j=0}^{i} e^{-j theta}), the Kendall
// tau partition function; Z(0) = n!. Kept in log space so large n * theta does
// not underflow.
inline double LogNormalizer(int n, double theta) {
  if (n < 1) throw std::invalid_argument("LogNormalizer: n must be at least 1");
  if (!(theta >= 0.0)) throw std::invalid_argument("LogNormalizer: theta must be non-negative");
  double log_z = 0.0;
  if (theta == 0.0) {
    for (int i = 1; i <= n - 1; ++i) log_z += std::log(static_cast<double>(i + 1));
    return log_z;
  }
  const double q = std::exp(-theta);
  // log((1 - q^{i+1}) / (1 - q)) via log1p for stability near theta = 0.
  const double log_denominator = std::log1p(-q);
  for (int i = 1; i <= n - 1; ++i) {
    log_z += std::log1p(-std::pow(q, i + 1)) - log_denominator;
  }
  return log_z;
}

inline double Normalizer(int n, double theta) { return std::exp(LogNormalizer(n, theta)); }

inline double LogPmf(const Permutation& sigma, const MallowsParams& params) {
  if (sigma.size() != params.center.size()) {
    throw std::invalid_argument("LogPmf: size mismatch");
  }
  const double distance = static_cast<double>(KendallTau(sigma, params.center));
  return -params.theta * distance - LogNormalizer(sigma.size(), params.theta);
}

inline double Pmf(const Permutation& sigma, const MallowsParams& params) {
  return std::exp(LogPmf(sigma, params));
}

// Exact sampler via repeated insertion. Items 1..n are inserted in turn; item
// i goes at offset r from the end with probability proportional to e^{-theta r},
// which adds exactly r inversions. The resulting permutation pi has
// Pr[pi] = e^{-theta inv(pi)} / Z(theta), and pi o center has the target
// distribution because Kendall tau is right-invariant. O(n^2), no burn-in.
inline Permutation Sample(const MallowsParams& params, RandomStream& rng) {
  const int n = params.center.size();
  const double q = std::exp(-params.theta);

  std::vector<int> sequence;
  sequence.reserve(n);
  std::vector<double> weights;
  weights.reserve(n);
  for (int item = 1; item <= n; ++item) {
    // weights[r] = q^r for offsets r = 0..item-1.
    weights.clear();
    double w = 1.0;
    double total = 0.0;
    for (int r = 0; r < item; ++r) {
      weights.push_back(w);
      total += w;
      w *= q;
    }
    const double u = rng.NextUnitDouble() * total;
    int offset = 0;
    double cumulative = 0.0;
    for (int r = 0; r < item; ++r) {
      cumulative += weights[r];
      if (u < cumulative) {
        offset = r;
        break;
      }
      offset = r;  // falls through to the last offset on rounding
    }
    sequence.insert(sequence.end() - offset, item);
  }

  const Permutation relative = Permutation::FromOneLine(std::move(sequence));
  return Compose(relative, params.center);
}

}  // namespace rase
