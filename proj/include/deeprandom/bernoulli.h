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

#ifndef DEEPRANDOM_BERNOULLI_H_
#define DEEPRANDOM_BERNOULLI_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "deeprandom/rng.h"

namespace deeprandom {

// Fixed-length bit vector in {0,1}^n.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(int n);
  static BitVector FromString(const std::string& bits);
  static BitVector FromOnes(int n, const std::vector<int>& ones);
  // Leading r ones followed by n - r zeros.
  static BitVector Leading(int n, int r);

  int size() const { return n_; }
  bool Get(int s) const { return (words_[s >> 6] >> (s & 63)) & 1ULL; }
  void Set(int s, bool value);

  int Weight() const;
  int Dot(const BitVector& other) const;
  bool SubsetOf(const BitVector& other) const;
  std::vector<int> Ones() const;

  BitVector operator&(const BitVector& o) const;
  BitVector operator|(const BitVector& o) const;
  BitVector operator^(const BitVector& o) const;
  BitVector Complement() const;

  std::string ToString() const;
  const std::vector<uint64_t>& words() const { return words_; }

  bool operator==(const BitVector& o) const {
    return n_ == o.n_ && words_ == o.words_;
  }
  bool operator<(const BitVector& o) const;

 private:
  int n_ = 0;
  std::vector<uint64_t> words_;
};

struct BitVectorHash {
  size_t operator()(const BitVector& v) const;
};

// Vector of Bernoulli parameters in [0,1]^n.
class ParamVector {
 public:
  ParamVector() = default;
  explicit ParamVector(std::vector<double> values);
  static ParamVector Constant(int n, double value);
  static ParamVector FromBits(const BitVector& bits);

  int size() const { return static_cast<int>(v_.size()); }
  double operator[](int s) const { return v_[s]; }
  const std::vector<double>& values() const { return v_; }

  // x / k, k >= 1.
  ParamVector Scaled(double k) const;
  double Sum() const;
  double Dot(const ParamVector& o) const;
  double Dot(const BitVector& bits) const;

 private:
  std::vector<double> v_;
};

// Probability of obtaining i from independent draws with parameters x.
double Chi(const BitVector& i, const ParamVector& x);
// Monomial prod_{s: i_s = 1} x_s; equals the sum of Chi over supersets of i.
double Pi(const BitVector& i, const ParamVector& x);
// Sum of Chi(j, x) over j with |j & i| = r: the chance that exactly r of
// the coordinates selected by i fire. O(|i| r) dynamic programming.
double Psi(const BitVector& i, int r, const ParamVector& x);
// C(r, l) theta^l (1 - theta)^(r - l).
double Beta(int l, int r, double theta);

BitVector Draw(const ParamVector& x, Rng& rng);
// Draw from w / k for a binary w, touching only the ones of w.
BitVector DrawDegraded(const BitVector& w, double k, Rng& rng);

// x . j / n.
double VHat(const ParamVector& x, const BitVector& j);

struct MomentsReport {
  double mean = 0;
  double var_a = 0;
  double var_b = 0;
  double gap_ab = 0;
  double k = 1;
};

// Closed-form moments of V_A = x.j/n and V_B = i.y/n with i ~ x/k, j ~ y/k.
MomentsReport Moments(const ParamVector& x, const ParamVector& y, double k);

double LogBinomial(int n, int r);

}  // namespace deeprandom

#endif  // DEEPRANDOM_BERNOULLI_H_
