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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rase/rng.hpp"

namespace rase {

// A permutation of {1, ..., n} in one-line notation. Image(i) is the value at
// index i; Preimage(v) is the index holding value v. All interfaces are
// 1-based; the backing vectors are indexed with the usual offset.
class Permutation {
 public:
  static Permutation Identity(int n) {
    if (n < 1) throw std::invalid_argument("Permutation::Identity: size must be at least 1");
    std::vector<int> line(n);
    for (int i = 0; i < n; ++i) line[i] = i + 1;
    std::vector<int> inverse = line;
    return Permutation(std::move(line), std::move(inverse));
  }

  static Permutation FromOneLine(std::vector<int> line) {
    const int n = static_cast<int>(line.size());
    if (n < 1) throw std::invalid_argument("Permutation::FromOneLine: size must be at least 1");
    std::vector<int> inverse(n, 0);
    for (int i = 0; i < n; ++i) {
      const int v = line[i];
      if (v < 1 || v > n) {
        throw std::invalid_argument("Permutation::FromOneLine: entry " + std::to_string(v) +
                                    " out of range for size " + std::to_string(n));
      }
      if (inverse[v - 1] != 0) {
        throw std::invalid_argument("Permutation::FromOneLine: duplicate entry " +
                                    std::to_string(v));
      }
      inverse[v - 1] = i + 1;
    }
    return Permutation(std::move(line), std::move(inverse));
  }

  int size() const { return static_cast<int>(line_.size()); }

  // sigma(i), 1-based.
  int Image(int i) const { return line_[i - 1]; }

  // sigma^-1(value), 1-based.
  int Preimage(int value) const { return inverse_[value - 1]; }

  Permutation Inverse() const {
    std::vector<int> line = inverse_;
    std::vector<int> inverse = line_;
    return Permutation(std::move(line), std::move(inverse));
  }

  const std::vector<int>& one_line() const { return line_; }

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.line_ == b.line_; }
  friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }

 private:
  Permutation(std::vector<int> line, std::vector<int> inverse)
      : line_(std::move(line)), inverse_(std::move(inverse)) {}

  std::vector<int> line_;
  std::vector<int> inverse_;
};

// (sigma o tau)(i) = sigma(tau(i)). The one composition convention used
// everywhere, including the shuffler's sigma_y^-1 * tau product.
inline Permutation Compose(const Permutation& sigma, const Permutation& tau) {
  if (sigma.size() != tau.size()) {
    throw std::invalid_argument("Compose: size mismatch");
  }
  const int n = sigma.size();
  std::vector<int> line(n);
  for (int i = 1; i <= n; ++i) line[i - 1] = sigma.Image(tau.Image(i));
  return Permutation::FromOneLine(std::move(line));
}

namespace internal {

// Counts inversions of `seq` by merge sort.
inline int64_t CountInversions(std::vector<int>& seq, std::vector<int>& scratch, int lo, int hi) {
  if (hi - lo <= 1) return 0;
  const int mid = lo + (hi - lo) / 2;
  int64_t count = CountInversions(seq, scratch, lo, mid) + CountInversions(seq, scratch, mid, hi);
  int left = lo, right = mid;
  for (int out = lo; out < hi; ++out) {
    if (left < mid && (right >= hi || seq[left] <= seq[right])) {
      scratch[out] = seq[left++];
    } else {
      count += mid - left;
      scratch[out] = seq[right++];
    }
  }
  for (int i = lo; i < hi; ++i) seq[i] = scratch[i];
  return count;
}

}  // namespace internal

// Kendall tau distance: the number of pairs (i, j) the two permutations order
// discordantly. Computed as the inversion count of sigma o tau^-1, which is
// O(n log n); equals the quadratic discordant-pair scan.
inline int64_t KendallTau(const Permutation& sigma, const Permutation& tau) {
  if (sigma.size() != tau.size()) {
    throw std::invalid_argument("KendallTau: size mismatch");
  }
  const int n = sigma.size();
  std::vector<int> relabeled(n);
  for (int p = 1; p <= n; ++p) relabeled[p - 1] = sigma.Image(tau.Preimage(p));
  std::vector<int> scratch(n);
  return internal::CountInversions(relabeled, scratch, 0, n);
}

// Builds the data permutation sigma_y from arrival indices: arrival_index[i-1]
// is the position Idx(y_i) of contributor i's response in the arrival order.
inline Permutation DataPermutation(std::vector<int> arrival_index) {
  return Permutation::FromOneLine(std::move(arrival_index));
}

// In-place cyclic shuffle: n-1 steps, step i swaps position i with a uniform
// position in {i+1, ..., n}. The rearrangement applied to the input is a
// uniformly random n-cycle, so exactly (n-1)! outputs are reachable.
inline Permutation SattoloShuffle(const Permutation& sigma, RandomStream& rng) {
  const int n = sigma.size();
  if (n < 2) {
    throw std::invalid_argument("SattoloShuffle: needs at least 2 elements");
  }
  std::vector<int> line = sigma.one_line();
  for (int i = 0; i + 1 < n; ++i) {
    const int j = i + 1 + static_cast<int>(rng.NextBelow(static_cast<uint64_t>(n - 1 - i)));
    std::swap(line[i], line[j]);
  }
  return Permutation::FromOneLine(std::move(line));
}

// Rearranges a sequence: result[j] = values[sigma(j)].
template <typename T>
std::vector<T> Apply(const Permutation& sigma, const std::vector<T>& values) {
  if (static_cast<int>(values.size()) != sigma.size()) {
    throw std::invalid_argument("Apply: sequence length mismatch");
  }
  std::vector<T> out(values.size());
  for (int j = 1; j <= sigma.size(); ++j) out[j - 1] = values[sigma.Image(j) - 1];
  return out;
}

// True when the permutation consists of a single n-cycle.
inline bool IsSingleNCycle(const Permutation& sigma) {
  const int n = sigma.size();
  int length = 0;
  int at = 1;
  do {
    at = sigma.Image(at);
    ++length;
  } while (at != 1 && length <= n);
  return length == n;
}

}  // namespace rase
