/*
 * Copyright 2026 The Deep Random Lab Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DEEPRANDOM_RNG_H_
#define DEEPRANDOM_RNG_H_

#include <cstdint>
#include <random>
#include <string>

namespace deeprandom {

// Seeded stream used by every randomized operation. Copyable; copies
// continue independently from the same position.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0);

  uint64_t Next() { return engine_(); }
  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool Bernoulli(double p) { return Uniform() < p; }
  // Uniform integer in [0, bound). bound must be positive.
  uint64_t Below(uint64_t bound);

  // Child stream for (seed, a, b), independent of the parent position.
  static uint64_t Derive(uint64_t seed, uint64_t a, uint64_t b = 0);
  Rng Fork(uint64_t tag);

  std::string SaveState() const;
  void LoadState(const std::string& state);

 private:
  std::mt19937_64 engine_;
};

uint64_t SplitMix64(uint64_t x);

}  // namespace deeprandom

#endif  // DEEPRANDOM_RNG_H_
