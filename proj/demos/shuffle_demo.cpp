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

// Shows the two shuffler branches side by side: a partition whose sensitivity
// sits inside [alpha, 10 alpha] drives the Mallows mechanism, while the
// all-singleton partition forces the uniform-cycle fallback.

#include <iostream>
#include <vector>

#include "rase/rase.hpp"

namespace {

void RunOnce(const char* label, int k, double alpha) {
  const int n = 8;
  std::vector<double> values;
  for (int i = 1; i <= n; ++i) values.push_back(100.0 + i);

  rase::NoisyBatch batch{values, rase::Permutation::Identity(n), /*timestamp=*/1};
  rase::ContributorGraph graph(n, {});
  rase::RandomStream rng(42);
  const auto result = rase::Shuffle(batch, k, graph, alpha, rng);

  std::cout << label << ": branch=" << rase::ShuffleBranchName(result.batch.branch_used)
            << " sensitivity=" << result.initial_sensitivity;
  if (result.batch.branch_used == rase::ShuffleBranch::kMallows) {
    std::cout << " theta=" << result.theta;
  }
  std::cout << "\n  output:";
  for (double v : result.batch.values) std::cout << " " << v;
  std::cout << "\n";
}

}  // namespace

int main() {
  RunOnce("single group ", /*k=*/1, /*alpha=*/10.0);  // sensitivity 28 in [10, 100]
  RunOnce("all singleton", /*k=*/8, /*alpha=*/10.0);  // sensitivity 0, fallback
  return 0;
}
