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

#ifndef DEEPRANDOM_PERMUTATION_H_
#define DEEPRANDOM_PERMUTATION_H_

#include <string>
#include <vector>

#include "deeprandom/bernoulli.h"
#include "deeprandom/rng.h"

namespace deeprandom {

// A bijection of {0..n-1}. Acting on a vector w it yields the vector whose
// s-th coordinate is w[sigma(s)], so that the quadratic matrix of the image
// distribution is M(sigma(u), sigma(v)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> map);
  static Permutation Identity(int n);
  // First |set| positions map onto the sorted set, the remaining positions
  // onto its sorted complement. This is the lexicographically smallest
  // permutation sending the leading block onto `set`.
  static Permutation ForLeadingSet(int n, const std::vector<int>& set);
  static Permutation Random(int n, Rng& rng);

  int size() const { return static_cast<int>(map_.size()); }
  int operator()(int s) const { return map_[s]; }
  const std::vector<int>& map() const { return map_; }

  // Number of moved points.
  int SupportSize() const;
  bool IsIdentity() const { return SupportSize() == 0; }
  Permutation Inverse() const;

  BitVector Apply(const BitVector& w) const;
  ParamVector Apply(const ParamVector& x) const;

  std::string ToString() const;
  static Permutation FromString(const std::string& text);

  bool operator==(const Permutation& o) const { return map_ == o.map_; }
  bool operator<(const Permutation& o) const { return map_ < o.map_; }

 private:
  std::vector<int> map_;
};

// (a o b)(s) = a(b(s)). Applying a and then b to a vector equals applying
// Compose(a, b).
Permutation Compose(const Permutation& a, const Permutation& b);

}  // namespace deeprandom

#endif  // DEEPRANDOM_PERMUTATION_H_
