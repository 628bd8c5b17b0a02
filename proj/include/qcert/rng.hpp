// Copyright 2026 The qcert Authors
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

#ifndef QCERT_RNG_HPP
#define QCERT_RNG_HPP

#include <cstdint>
#include <vector>

namespace qcert {

// Counter-based generator (SplitMix64 output function over key+counter).
// Streams derived from (master_seed, stream_index) are independent and
// reproducible regardless of scheduling, so Monte Carlo trials can be
// farmed out to any number of workers without changing results.
class Rng {
public:
  Rng() : key_(0), counter_(0) {}
  explicit Rng(uint64_t seed) : key_(mix(seed ^ 0x9e3779b97f4a7c15ull)), counter_(0) {}

  // Deterministic per-trial substream.
  static Rng stream(uint64_t master_seed, uint64_t stream_index) {
    Rng r;
    r.key_ = mix(mix(master_seed + 0x9e3779b97f4a7c15ull) ^ (stream_index * 0xbf58476d1ce4e5b9ull + 0x94d049bb133111ebull));
    r.counter_ = 0;
    return r;
  }

  uint64_t next_u64() {
    uint64_t z = key_ + (++counter_) * 0x9e3779b97f4a7c15ull;
    return mix(z);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool next_bit() { return (next_u64() >> 63) != 0; }

  // Uniform in [0, bound). Rejection keeps the draw exactly uniform.
  uint64_t next_below(uint64_t bound) {
    if (bound <= 1) return 0;
    uint64_t mask = ~0ull >> __builtin_clzll((bound - 1) | 1);
    for (;;) {
      uint64_t v = next_u64() & mask;
      if (v < bound) return v;
    }
  }

  // Inverse-CDF draw from a cumulative weight table (last entry = total).
  size_t next_discrete(const std::vector<double> &cumulative) {
    double u = next_double() * cumulative.back();
    size_t lo = 0, hi = cumulative.size() - 1;
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      if (cumulative[mid] <= u)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }

private:
  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  uint64_t key_;
  uint64_t counter_;
};

} // namespace qcert

#endif
