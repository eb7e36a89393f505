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

#include "deeprandom/bernoulli.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "deeprandom/error.h"

namespace deeprandom {
namespace {

void CheckSameSize(int a, int b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::kInvalidInput,
                std::string(what) + ": dimension mismatch " +
                    std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

BitVector::BitVector(int n) : n_(n), words_((n + 63) / 64, 0) {
  if (n < 0) throw Error(ErrorCode::kInvalidInput, "negative dimension");
}

BitVector BitVector::FromString(const std::string& bits) {
  BitVector v(static_cast<int>(bits.size()));
  for (int s = 0; s < v.n_; ++s) {
    if (bits[s] == '1') {
      v.Set(s, true);
    } else if (bits[s] != '0') {
      throw Error(ErrorCode::kInvalidInput, "bit string: bad character");
    }
  }
  return v;
}

BitVector BitVector::FromOnes(int n, const std::vector<int>& ones) {
  BitVector v(n);
  for (int s : ones) {
    if (s < 0 || s >= n) throw Error(ErrorCode::kInvalidInput, "index range");
    v.Set(s, true);
  }
  return v;
}

BitVector BitVector::Leading(int n, int r) {
  BitVector v(n);
  for (int s = 0; s < r && s < n; ++s) v.Set(s, true);
  return v;
}

void BitVector::Set(int s, bool value) {
  const uint64_t mask = 1ULL << (s & 63);
  if (value) {
    words_[s >> 6] |= mask;
  } else {
    words_[s >> 6] &= ~mask;
  }
}

int BitVector::Weight() const {
  int w = 0;
  for (uint64_t word : words_) w += std::popcount(word);
  return w;
}

int BitVector::Dot(const BitVector& other) const {
  CheckSameSize(n_, other.n_, "dot");
  int w = 0;
  for (size_t t = 0; t < words_.size(); ++t) {
    w += std::popcount(words_[t] & other.words_[t]);
  }
  return w;
}

bool BitVector::SubsetOf(const BitVector& other) const {
  CheckSameSize(n_, other.n_, "subset");
  for (size_t t = 0; t < words_.size(); ++t) {
    if (words_[t] & ~other.words_[t]) return false;
  }
  return true;
}

std::vector<int> BitVector::Ones() const {
  std::vector<int> out;
  for (size_t t = 0; t < words_.size(); ++t) {
    uint64_t word = words_[t];
    while (word) {
      out.push_back(static_cast<int>(t * 64) + std::countr_zero(word));
      word &= word - 1;
    }
  }
  return out;
}

BitVector BitVector::operator&(const BitVector& o) const {
  CheckSameSize(n_, o.n_, "and");
  BitVector r(n_);
  for (size_t t = 0; t < words_.size(); ++t) r.words_[t] = words_[t] & o.words_[t];
  return r;
}

BitVector BitVector::operator|(const BitVector& o) const {
  CheckSameSize(n_, o.n_, "or");
  BitVector r(n_);
  for (size_t t = 0; t < words_.size(); ++t) r.words_[t] = words_[t] | o.words_[t];
  return r;
}

BitVector BitVector::operator^(const BitVector& o) const {
  CheckSameSize(n_, o.n_, "xor");
  BitVector r(n_);
  for (size_t t = 0; t < words_.size(); ++t) r.words_[t] = words_[t] ^ o.words_[t];
  return r;
}

BitVector BitVector::Complement() const {
  BitVector r(n_);
  for (size_t t = 0; t < words_.size(); ++t) r.words_[t] = ~words_[t];
  if (n_ % 64) r.words_.back() &= (1ULL << (n_ % 64)) - 1;
  return r;
}

std::string BitVector::ToString() const {
  std::string s(n_, '0');
  for (int t = 0; t < n_; ++t) {
    if (Get(t)) s[t] = '1';
  }
  return s;
}

bool BitVector::operator<(const BitVector& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  // Same order as comparing ToString() results.
  for (size_t t = 0; t < words_.size(); ++t) {
    const uint64_t diff = words_[t] ^ o.words_[t];
    if (diff) return (words_[t] & (diff & -diff)) == 0;
  }
  return false;
}

size_t BitVectorHash::operator()(const BitVector& v) const {
  uint64_t h = static_cast<uint64_t>(v.size());
  for (uint64_t w : v.words()) h = SplitMix64(h ^ w);
  return static_cast<size_t>(h);
}

ParamVector::ParamVector(std::vector<double> values) : v_(std::move(values)) {
  for (double x : v_) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw Error(ErrorCode::kInvalidInput, "parameter outside [0,1]");
    }
  }
}

ParamVector ParamVector::Constant(int n, double value) {
  return ParamVector(std::vector<double>(n, value));
}

ParamVector ParamVector::FromBits(const BitVector& bits) {
  std::vector<double> v(bits.size());
  for (int s = 0; s < bits.size(); ++s) v[s] = bits.Get(s) ? 1.0 : 0.0;
  return ParamVector(std::move(v));
}

ParamVector ParamVector::Scaled(double k) const {
  if (!(k >= 1.0)) throw Error(ErrorCode::kInvalidInput, "k must be >= 1");
  std::vector<double> v(v_);
  for (double& x : v) x /= k;
  return ParamVector(std::move(v));
}

double ParamVector::Sum() const {
  double s = 0;
  for (double x : v_) s += x;
  return s;
}

double ParamVector::Dot(const ParamVector& o) const {
  CheckSameSize(size(), o.size(), "dot");
  double s = 0;
  for (int t = 0; t < size(); ++t) s += v_[t] * o.v_[t];
  return s;
}

double ParamVector::Dot(const BitVector& bits) const {
  CheckSameSize(size(), bits.size(), "dot");
  double s = 0;
  for (int t : bits.Ones()) s += v_[t];
  return s;
}

double Chi(const BitVector& i, const ParamVector& x) {
  CheckSameSize(i.size(), x.size(), "chi");
  double p = 1.0;
  for (int s = 0; s < x.size(); ++s) p *= i.Get(s) ? x[s] : 1.0 - x[s];
  return p;
}

double Pi(const BitVector& i, const ParamVector& x) {
  CheckSameSize(i.size(), x.size(), "pi");
  double p = 1.0;
  for (int s : i.Ones()) p *= x[s];
  return p;
}

double Psi(const BitVector& i, int r, const ParamVector& x) {
  CheckSameSize(i.size(), x.size(), "psi");
  const std::vector<int> ones = i.Ones();
  if (r < 0 || r > static_cast<int>(ones.size())) return 0.0;
  // dp[c] = probability that c of the processed coordinates of i are 1.
  std::vector<double> dp(r + 1, 0.0);
  dp[0] = 1.0;
  for (int s : ones) {
    for (int c = r; c >= 0; --c) {
      dp[c] = dp[c] * (1.0 - x[s]) + (c > 0 ? dp[c - 1] * x[s] : 0.0);
    }
  }
  return dp[r];
}

double LogBinomial(int n, int r) {
  return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

double Beta(int l, int r, double theta) {
  if (l < 0 || r < 0 || l > r) {
    throw Error(ErrorCode::kInvalidInput, "beta requires 0 <= l <= r");
  }
  if (theta == 0.0) return l == 0 ? 1.0 : 0.0;
  if (theta == 1.0) return l == r ? 1.0 : 0.0;
  if (r <= 30) {
    double c = 1.0;
    for (int t = 1; t <= l; ++t) c = c * (r - l + t) / t;
    return c * std::pow(theta, l) * std::pow(1.0 - theta, r - l);
  }
  return std::exp(LogBinomial(r, l) + l * std::log(theta) +
                  (r - l) * std::log1p(-theta));
}

BitVector Draw(const ParamVector& x, Rng& rng) {
  BitVector i(x.size());
  for (int s = 0; s < x.size(); ++s) {
    if (rng.Uniform() < x[s]) i.Set(s, true);
  }
  return i;
}

BitVector DrawDegraded(const BitVector& w, double k, Rng& rng) {
  BitVector i(w.size());
  const double p = 1.0 / k;
  for (int s : w.Ones()) {
    if (rng.Uniform() < p) i.Set(s, true);
  }
  return i;
}

double VHat(const ParamVector& x, const BitVector& j) {
  return x.Dot(j) / x.size();
}

MomentsReport Moments(const ParamVector& x, const ParamVector& y, double k) {
  CheckSameSize(x.size(), y.size(), "moments");
  if (!(k >= 1.0)) throw Error(ErrorCode::kInvalidInput, "k must be >= 1");
  const double n = x.size();
  MomentsReport r;
  r.k = k;
  double va = 0, vb = 0, gap = 0;
  for (int s = 0; s < x.size(); ++s) {
    const double a = x[s], b = y[s];
    va += a * a * b * (1.0 - b / k);
    vb += b * b * a * (1.0 - a / k);
    gap += a * b * (a + b - 2.0 * a * b / k);
  }
  r.mean = x.Dot(y) / (n * k);
  r.var_a = va / (n * n * k);
  r.var_b = vb / (n * n * k);
  r.gap_ab = gap / (n * n * k);
  return r;
}

}  // namespace deeprandom
