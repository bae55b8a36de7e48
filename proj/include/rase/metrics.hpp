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
#include <map>
#include <stdexcept>
#include <vector>

namespace rase {

// Utility and attack metrics for one evaluated run.
struct EvaluationMetrics {
  double aae = 0.0;
  double mse = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

// Average aggregation error (1/n) * sum(x_i - z_i); signed, pairs by position.
inline double Aae(const std::vector<double>& x, const std::vector<double>& z) {
  if (x.size() != z.size()) throw std::invalid_argument("Aae: length mismatch");
  if (x.empty()) throw std::invalid_argument("Aae: empty input");
  double sum = 0.0;
  for (size_t i = 0; i < x.size(); ++i) sum += x[i] - z[i];
  return sum / static_cast<double>(x.size());
}

// Maximum square error max_i (x_i - z_i)^2; pairs by position.
inline double Mse(const std::vector<double>& x, const std::vector<double>& z) {
  if (x.size() != z.size()) throw std::invalid_argument("Mse: length mismatch");
  if (x.empty()) throw std::invalid_argument("Mse: empty input");
  double worst = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double gap = x[i] - z[i];
    worst = std::max(worst, gap * gap);
  }
  return worst;
}

// Windowed average Win(t_q, w) = (1/w) * sum of the estimates over the w
// timestamps ending at t_q. Every timestamp in (t_q - w, t_q] must be present.
inline double WindowQuery(const std::map<int64_t, double>& estimates, int64_t t_q, int w) {
  if (w < 1) throw std::invalid_argument("WindowQuery: window must be positive");
  double sum = 0.0;
  for (int64_t t = t_q - w + 1; t <= t_q; ++t) {
    const auto it = estimates.find(t);
    if (it == estimates.end()) {
      throw std::invalid_argument("WindowQuery: missing estimate for timestamp " +
                                  std::to_string(t));
    }
    sum += it->second;
  }
  return sum / static_cast<double>(w);
}

}  // namespace rase
