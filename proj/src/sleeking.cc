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

#include "deeprandom/sleeking.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "deeprandom/error.h"

namespace deeprandom {
namespace {

constexpr int kExactSleekMaxN = 7;

// Cycle type as a sorted list of cycle lengths > 1, packed into an integer.
uint64_t CycleType(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  std::vector<int> lens;
  for (size_t s = 0; s < p.size(); ++s) {
    if (seen[s]) continue;
    int len = 0;
    for (size_t t = s; !seen[t]; t = p[t]) {
      seen[t] = 1;
      ++len;
    }
    if (len > 1) lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  uint64_t code = 0;
  for (int l : lens) code = code * 16 + l;
  return code;
}

int Moved(const std::vector<int>& p) {
  int c = 0;
  for (size_t s = 0; s < p.size(); ++s) c += p[s] != static_cast<int>(s);
  return c;
}

void CheckExactN(int n, const char* what) {
  if (n > kExactSleekMaxN) {
    throw Error(ErrorCode::kCapability,
                std::string(what) + ": exact mode needs n <= 7");
  }
}

}  // namespace

double Derangements(int m) {
  if (m == 0) return 1;
  if (m == 1) return 0;
  double a = 1, b = 0;  // D(0), D(1)
  for (int t = 2; t <= m; ++t) {
    const double c = (t - 1) * (a + b);
    a = b;
    b = c;
  }
  return b;
}

double SupportClassSize(int n, int ell) {
  return std::round(std::exp(LogBinomial(n, ell))) * Derangements(ell);
}

SleekKernel::SleekKernel(int n, const std::map<int, double>& size_weights)
    : n_(n), w_(n + 1, 0.0) {
  double total = 0;
  for (const auto& [ell, w] : size_weights) {
    if (ell < 0 || ell > n || ell == 1) {
      throw Error(ErrorCode::kInvalidInput,
                  "kernel support size must be in {0, 2, ..., n}");
    }
    if (w < 0) throw Error(ErrorCode::kInvalidInput, "negative kernel mass");
    w_[ell] += w;
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidInput, "kernel masses must sum to 1");
  }
}

SleekKernel SleekKernel::Identity(int n) { return SleekKernel(n, {{0, 1.0}}); }

double SleekKernel::PerPermutation(int ell) const {
  if (w_[ell] == 0) return 0;
  return w_[ell] / SupportClassSize(n_, ell);
}

SleekKernel DiracKernel(int n, int ell) {
  if (ell == 1) throw Error(ErrorCode::kInvalidInput, "support size 1");
  return SleekKernel(n, {{ell, 1.0}});
}

Permutation SampleSigma(const SleekKernel& kernel, Rng& rng) {
  const int n = kernel.n();
  double u = rng.Uniform();
  int ell = 0;
  for (int l = 0; l <= n; ++l) {
    if (kernel.Weight(l) <= 0) continue;
    ell = l;
    if (u < kernel.Weight(l)) break;
    u -= kernel.Weight(l);
  }
  Permutation id = Permutation::Identity(n);
  if (ell == 0) return id;
  // Uniform support of size ell (partial Fisher-Yates).
  std::vector<int> pool = id.map();
  for (int t = 0; t < ell; ++t) std::swap(pool[t], pool[t + rng.Below(n - t)]);
  std::vector<int> support(pool.begin(), pool.begin() + ell);
  std::sort(support.begin(), support.end());
  // Uniform derangement of the support by rejection.
  std::vector<int> img(ell);
  for (;;) {
    std::iota(img.begin(), img.end(), 0);
    for (int t = ell - 1; t > 0; --t) std::swap(img[t], img[rng.Below(t + 1)]);
    bool ok = true;
    for (int t = 0; t < ell && ok; ++t) ok = img[t] != t;
    if (ok) break;
  }
  std::vector<int> m = id.map();
  for (int t = 0; t < ell; ++t) m[support[t]] = support[img[t]];
  return Permutation(std::move(m));
}

Dist Sleek(const Dist& phi, const SleekKernel& kernel, SleekMode mode, Rng* rng,
           int budget) {
  const int n = phi.n();
  if (kernel.n() != n) throw Error(ErrorCode::kInvalidInput, "kernel dimension");
  std::vector<SupportPoint> pts;
  if (mode == SleekMode::kExact) {
    CheckExactN(n, "sleek");
    std::vector<double> coef(n + 1);
    for (int l = 0; l <= n; ++l) coef[l] = kernel.PerPermutation(l);
    std::vector<int> p = Permutation::Identity(n).map();
    do {
      const double c = coef[Moved(p)];
      if (c <= 0) continue;
      const Permutation sigma(p);
      for (const SupportPoint& pt : phi.points()) {
        pts.push_back({sigma.Apply(pt.x), c * pt.weight});
      }
    } while (std::next_permutation(p.begin(), p.end()));
    return Dist(n, pts);
  }
  if (rng == nullptr) throw Error(ErrorCode::kInvalidInput, "sampled sleek needs rng");
  if (budget < 1) throw Error(ErrorCode::kInvalidInput, "budget must be >= 1");
  for (int t = 0; t < budget; ++t) {
    const Permutation sigma = SampleSigma(kernel, *rng);
    for (const SupportPoint& pt : phi.points()) {
      pts.push_back({sigma.Apply(pt.x), pt.weight / budget});
    }
  }
  return Dist(n, pts);
}

ComposeReport ComposeCheck(const SleekKernel& g1, const SleekKernel& g2) {
  const int n = g1.n();
  if (g2.n() != n) throw Error(ErrorCode::kInvalidInput, "kernel dimension");
  CheckExactN(n, "compose_check");
  std::vector<std::vector<int>> perms;
  std::vector<int> p = Permutation::Identity(n).map();
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<double> c1(n + 1), c2(n + 1);
  for (int l = 0; l <= n; ++l) {
    c1[l] = g1.PerPermutation(l);
    c2[l] = g2.PerPermutation(l);
  }
  // coefficient(s) = sum_sigma g1(|sigma|) g2(|sigma^-1 o s|).
  std::vector<double> lo(n + 1, INFINITY), hi(n + 1, -INFINITY), mass(n + 1, 0);
  std::map<uint64_t, std::pair<double, double>> by_type;
  std::vector<int> inv(n), q(n);
  for (const std::vector<int>& s : perms) {
    double coef = 0;
    for (const std::vector<int>& sigma : perms) {
      const double a = c1[Moved(sigma)];
      if (a == 0) continue;
      for (int t = 0; t < n; ++t) inv[sigma[t]] = t;
      for (int t = 0; t < n; ++t) q[t] = inv[s[t]];
      coef += a * c2[Moved(q)];
    }
    const int ell = Moved(s);
    lo[ell] = std::min(lo[ell], coef);
    hi[ell] = std::max(hi[ell], coef);
    mass[ell] += coef;
    auto [it, fresh] = by_type.try_emplace(CycleType(s), coef, coef);
    if (!fresh) {
      it->second.first = std::min(it->second.first, coef);
      it->second.second = std::max(it->second.second, coef);
    }
  }
  ComposeReport r;
  std::map<int, double> w;
  double total = 0;
  for (int l = 0; l <= n; ++l) total += mass[l];
  for (int l = 0; l <= n; ++l) {
    if (mass[l] > 0) w[l] = mass[l] / total;
  }
  r.kernel = SleekKernel(n, w);
  r.class_spread.assign(n + 1, 0.0);
  for (int l = 0; l <= n; ++l) {
    if (hi[l] >= lo[l]) r.class_spread[l] = hi[l] - lo[l];
    r.max_class_spread = std::max(r.max_class_spread, r.class_spread[l]);
  }
  for (const auto& [type, range] : by_type) {
    r.max_cycle_type_spread =
        std::max(r.max_cycle_type_spread, range.second - range.first);
  }
  r.uniform_within_size = r.max_class_spread <= 1e-12;
  return r;
}

SleekKernel ComposeKernels(const SleekKernel& g1, const SleekKernel& g2) {
  ComposeReport r = ComposeCheck(g1, g2);
  if (!r.uniform_within_size) {
    throw Error(ErrorCode::kInternal,
                "composed coefficient varies inside a support-size class by " +
                    std::to_string(r.max_class_spread));
  }
  return r.kernel;
}

double SigmaGap(const Eigen::MatrixXd& m, const Eigen::MatrixXd& m2,
                const Permutation& sigma) {
  const int n = static_cast<int>(m.rows());
  double f = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      f += m(u, v) * (m2(u, v) - 2.0 * m2(u, sigma(v)) +
                      m2(sigma(u), sigma(v)));
    }
  }
  return f;
}

DeltaGammaResult DeltaGamma(const Dist& phi, const Dist& phi2,
                            const SleekKernel& kernel, int trials, Rng& rng) {
  if (trials < 1) throw Error(ErrorCode::kInvalidInput, "trials must be >= 1");
  const int n = phi.n();
  const Eigen::MatrixXd m = QuadMatrixOf(phi).values;
  const Eigen::MatrixXd m2 = QuadMatrixOf(phi2).values;
  DeltaGammaResult r;
  if (n <= kExactSleekMaxN) {
    std::vector<double> coef(n + 1);
    for (int l = 0; l <= n; ++l) coef[l] = kernel.PerPermutation(l);
    std::vector<int> p = Permutation::Identity(n).map();
    double total = 0;
    do {
      const double c = coef[Moved(p)];
      if (c > 0) total += c * SigmaGap(m, m2, Permutation(p));
    } while (std::next_permutation(p.begin(), p.end()));
    r.value = total;
    r.exact = true;
    return r;
  }
  double sum = 0, sum2 = 0;
  for (int t = 0; t < trials; ++t) {
    const double f = SigmaGap(m, m2, SampleSigma(kernel, rng));
    sum += f;
    sum2 += f * f;
  }
  r.value = sum / trials;
  const double var = std::max(0.0, sum2 / trials - r.value * r.value);
  r.stderr_ = std::sqrt(var / trials);
  return r;
}

Lemma3Preset MakeLemma3Preset(int n, double alpha, double eps_prime) {
  Lemma3Preset p;
  p.eps_prime = eps_prime;
  p.l0 = std::pow(alpha, 10) / (9.0 * std::pow(2.0, 18));
  int ell = static_cast<int>(std::lround(eps_prime * n));
  if (ell == 1) ell = 2;
  ell = std::min(ell, n);
  int ell0 = static_cast<int>(std::lround(p.l0 * n));
  if (ell0 == 1) ell0 = 2;
  p.gamma = DiracKernel(n, ell);
  p.delta = DiracKernel(n, std::min(ell0, n));
  return p;
}

Dist ApplyLemma3(const Dist& phi, const Lemma3Preset& preset, SleekMode mode,
                 Rng* rng, int budget) {
  if (mode == SleekMode::kExact) {
    return Sleek(Sleek(phi, preset.delta, mode), preset.gamma, mode);
  }
  if (rng == nullptr) throw Error(ErrorCode::kInvalidInput, "sampled sleek needs rng");
  std::vector<SupportPoint> pts;
  for (int t = 0; t < budget; ++t) {
    const Permutation mu = SampleSigma(preset.delta, *rng);
    const Permutation sigma = SampleSigma(preset.gamma, *rng);
    const Permutation both = Compose(sigma, mu);
    for (const SupportPoint& pt : phi.points()) {
      pts.push_back({both.Apply(pt.x), pt.weight / budget});
    }
  }
  return Dist(phi.n(), pts);
}

}  // namespace deeprandom
