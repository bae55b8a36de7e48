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
#include <initializer_list>
#include <random>
#include <stdexcept>

namespace rase {

// SplitMix64 finalizer. Used to derive well-separated substream seeds from a
// run seed plus a path of context words (timestamp, contributor id, stage tag),
// so that results do not depend on evaluation order.
inline uint64_t MixBits(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t DeriveSeed(uint64_t seed, std::initializer_list<uint64_t> path) {
  uint64_t state = MixBits(seed);
  for (uint64_t word : path) {
    state = MixBits(state ^ MixBits(word));
  }
  return state;
}

// Deterministic random stream. All float/integer conversions are done by hand
// on top of the (standardized) mt19937_64 sequence, so identical seeds give
// identical results on every platform and standard library.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : engine_(seed) {}

  uint64_t NextUint64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double NextUnitDouble() { return static_cast<double>(NextUint64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; never returns 0, safe as a log() argument.
  double NextPositiveUnitDouble() { return 1.0 - NextUnitDouble(); }

  // Uniform on {0, ..., bound - 1} without modulo bias.
  uint64_t NextBelow(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("RandomStream::NextBelow: bound must be positive");
    const uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const uint64_t r = NextUint64();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rase
