// Copyright 2026 The privbandit Authors
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

#ifndef PRIVBANDIT_RANDOM_H_
#define PRIVBANDIT_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace privbandit {

// Seeded random stream. Draws are produced from the raw 64-bit engine output
// rather than std distributions so that sequences are identical across
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0, 1).
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  // Index drawn from a probability vector (need not be exactly normalized).
  std::size_t categorical(std::span<const double> probs);

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Seed of replication `index` under `master_seed` (SplitMix64 finalizer).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

}  // namespace privbandit

#endif  // PRIVBANDIT_RANDOM_H_
