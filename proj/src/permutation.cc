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

#include "deeprandom/permutation.h"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "deeprandom/error.h"

namespace deeprandom {

Permutation::Permutation(std::vector<int> map) : map_(std::move(map)) {
  std::vector<char> seen(map_.size(), 0);
  for (int v : map_) {
    if (v < 0 || v >= size() || seen[v]) {
      throw Error(ErrorCode::kInvalidInput, "not a permutation");
    }
    seen[v] = 1;
  }
}

Permutation Permutation::Identity(int n) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  Permutation p;
  p.map_ = std::move(m);
  return p;
}

Permutation Permutation::ForLeadingSet(int n, const std::vector<int>& set) {
  std::vector<char> in(n, 0);
  for (int s : set) in[s] = 1;
  std::vector<int> m;
  m.reserve(n);
  for (int s = 0; s < n; ++s) {
    if (in[s]) m.push_back(s);
  }
  for (int s = 0; s < n; ++s) {
    if (!in[s]) m.push_back(s);
  }
  return Permutation(std::move(m));
}

Permutation Permutation::Random(int n, Rng& rng) {
  Permutation p = Identity(n);
  for (int s = n - 1; s > 0; --s) {
    std::swap(p.map_[s], p.map_[rng.Below(s + 1)]);
  }
  return p;
}

int Permutation::SupportSize() const {
  int c = 0;
  for (int s = 0; s < size(); ++s) c += map_[s] != s;
  return c;
}

Permutation Permutation::Inverse() const {
  std::vector<int> inv(map_.size());
  for (int s = 0; s < size(); ++s) inv[map_[s]] = s;
  Permutation p;
  p.map_ = std::move(inv);
  return p;
}

BitVector Permutation::Apply(const BitVector& w) const {
  if (w.size() != size()) {
    throw Error(ErrorCode::kInvalidInput, "permutation dimension mismatch");
  }
  BitVector out(size());
  for (int s = 0; s < size(); ++s) {
    if (w.Get(map_[s])) out.Set(s, true);
  }
  return out;
}

ParamVector Permutation::Apply(const ParamVector& x) const {
  if (x.size() != size()) {
    throw Error(ErrorCode::kInvalidInput, "permutation dimension mismatch");
  }
  std::vector<double> out(size());
  for (int s = 0; s < size(); ++s) out[s] = x[map_[s]];
  return ParamVector(std::move(out));
}

std::string Permutation::ToString() const {
  std::ostringstream out;
  for (int s = 0; s < size(); ++s) out << (s ? "," : "") << map_[s];
  return out.str();
}

Permutation Permutation::FromString(const std::string& text) {
  std::vector<int> m;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (!tok.empty()) m.push_back(std::stoi(tok));
  }
  return Permutation(std::move(m));
}

Permutation Compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kInvalidInput, "compose dimension mismatch");
  }
  std::vector<int> m(a.size());
  for (int s = 0; s < a.size(); ++s) m[s] = a(b(s));
  return Permutation(std::move(m));
}

}  // namespace deeprandom
