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
#include <stdexcept>

#include "rase/rng.hpp"

namespace rase {

// Common value range of the sensed data: every contributor's readings lie in
// [min_value, max_value], and Width() is the adjacency distance Delta(x).
struct DataRange {
  DataRange(double min_value_in, double max_value_in)
      : min_value(min_value_in), max_value(max_value_in) {
    if (!(min_value < max_value)) {
      throw std::invalid_argument("DataRange: min_value must be strictly below max_value");
    }
  }

  double Width() const { return max_value - min_value; }

  double min_value;
  double max_value;
};

// (beta, rho) interval precision: the noisy value should fall within
// [(1-beta)x, (1+beta)x] with probability at least rho. rho = 1 is excluded
// because it would force an infinite budget.
struct PrecisionRequirement {
  PrecisionRequirement(double beta_in, double rho_in) : beta(beta_in), rho(rho_in) {
    if (!(beta >= 0.0 && beta <= 1.0)) {
      throw std::invalid_argument("PrecisionRequirement: beta must lie in [0, 1]");
    }
    if (!(rho >= 0.0 && rho < 1.0)) {
      throw std::invalid_argument("PrecisionRequirement: rho must lie in [0, 1)");
    }
  }

  double beta;
  double rho;
};

// epsilon_s bounds the local randomizer's output likelihood ratios; alpha is
// the shuffler's budget over permutation space.
struct PrivacyBudget {
  PrivacyBudget(double epsilon_s_in, double alpha_in) : epsilon_s(epsilon_s_in), alpha(alpha_in) {
    if (!(epsilon_s > 0.0) || !std::isfinite(epsilon_s)) {
      throw std::invalid_argument("PrivacyBudget: epsilon_s must be positive and finite");
    }
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw std::invalid_argument("PrivacyBudget: alpha must be positive and finite");
    }
  }

  double epsilon_s;
  double alpha;
};

// Smallest budget for which the Laplace mechanism meets the (beta, rho)
// precision: -Delta(x) * ln(1 - rho) / (beta * x_max). Requires beta > 0 and
// x_max > 0; the bound is undefined otherwise.
inline double MinBudget(const DataRange& range, const PrecisionRequirement& precision) {
  if (precision.beta <= 0.0) {
    throw std::invalid_argument("MinBudget: beta must be positive");
  }
  if (range.max_value <= 0.0) {
    throw std::invalid_argument("MinBudget: max_value must be positive");
  }
  return -range.Width() * std::log1p(-precision.rho) / (precision.beta * range.max_value);
}

// One draw from Lap(0, scale) by inverse-CDF transform of a single uniform:
// eta = -scale * sgn(u) * ln(1 - 2|u|) with u uniform on (-1/2, 1/2).
inline double SampleLaplace(double scale, RandomStream& rng) {
  if (!(scale > 0.0)) {
    throw std::invalid_argument("SampleLaplace: scale must be positive");
  }
  double d;
  do {
    d = rng.NextUnitDouble();
  } while (d == 0.0);  // u = -1/2 would map to -infinity
  const double u = d - 0.5;
  const double sign = u < 0.0 ? -1.0 : 1.0;
  return -scale * sign * std::log(1.0 - 2.0 * std::abs(u));
}

// Budget-aware randomizer. Adds Lap(0, Delta(x)/epsilon_s) noise; when the
// budget is below the MinBudget bound the output is clamped into the data
// range, otherwise the raw noisy value is released even if it falls outside.
inline double Randomize(double x, const PrivacyBudget& budget, const DataRange& range,
                        const PrecisionRequirement& precision, RandomStream& rng) {
  if (x < range.min_value || x > range.max_value) {
    throw std::invalid_argument("Randomize: input outside the declared data range");
  }
  const double scale = range.Width() / budget.epsilon_s;
  const double y = x + SampleLaplace(scale, rng);
  if (budget.epsilon_s >= MinBudget(range, precision)) {
    return y;
  }
  return std::clamp(y, range.min_value, range.max_value);
}

}  // namespace rase
