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

#include "deeprandom/adversary.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <sstream>

#include "deeprandom/error.h"

namespace deeprandom {
namespace {

constexpr double kLawTol = 1e-16;

double Clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// Nonnegligible pmf values of Binomial(r, p).
std::vector<std::pair<int, double>> BinomialSupport(int r, double p) {
  std::vector<std::pair<int, double>> out;
  if (r == 0 || p == 0) {
    out.push_back({0, 1.0});
    return out;
  }
  if (p >= 1) {
    out.push_back({r, 1.0});
    return out;
  }
  const int mode = static_cast<int>(std::floor((r + 1) * p));
  const double lq = std::log1p(-p), lp = std::log(p);
  auto pmf = [&](int t) {
    return std::exp(LogBinomial(r, t) + t * lp + (r - t) * lq);
  };
  for (int t = mode; t >= 0; --t) {
    const double v = pmf(t);
    if (v < kLawTol && t < mode) break;
    out.push_back({t, v});
  }
  for (int t = mode + 1; t <= r; ++t) {
    const double v = pmf(t);
    if (v < kLawTol) break;
    out.push_back({t, v});
  }
  return out;
}

// Law of the triple for binary x, y with c11 = |x & y|, c10 = |x & ~y|,
// c01 = |~x & y| and degradation probability p = 1/k.
template <typename F>
void TripleLaw(int c11, int c10, int c01, double p, F&& emit) {
  const auto both = BinomialSupport(c11, p * p);
  const auto a10 = BinomialSupport(c10, p);
  for (const auto& [nb, pb] : both) {
    const int r = c11 - nb;
    // Remaining c11 coordinates: i-only with probability p/(1+p); given not
    // i-only, j-only with probability p.
    const auto ionly = BinomialSupport(r, p / (1.0 + p));
    for (const auto& [ni, pi] : ionly) {
      const auto bpart = BinomialSupport(r - ni + c01, p);
      for (const auto& [ai, pa] : a10) {
        const double w = pb * pi * pa;
        if (w < kLawTol) continue;
        for (const auto& [bj, pbj] : bpart) {
          emit(nb + ni + ai, nb + bj, nb, w * pbj);
        }
      }
    }
  }
}

}  // namespace

uint64_t PackTriple(int a, int b, int c) {
  return (static_cast<uint64_t>(a) << 40) | (static_cast<uint64_t>(b) << 20) |
         static_cast<uint64_t>(c);
}

void UnpackTriple(uint64_t key, int* a, int* b, int* c) {
  *a = static_cast<int>(key >> 40);
  *b = static_cast<int>((key >> 20) & 0xFFFFF);
  *c = static_cast<int>(key & 0xFFFFF);
}

bool TripleFeasible(int n, int a, int b, int c) {
  return a >= 0 && b >= 0 && c >= 0 && a <= n && b <= n && c <= std::min(a, b) &&
         a + b - c <= n;
}

const char* StrategyKindName(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kMeanMatch: return "mean-match";
    case StrategyKind::kCounting: return "counting";
    case StrategyKind::kTable: return "table";
    case StrategyKind::kBayes: return "bayes";
    case StrategyKind::kCustom: return "custom";
  }
  return "unknown";
}

struct Strategy::BayesModel {
  Dist phi;
  Dist phi2;
  mutable std::atomic<int64_t> fallbacks{0};
};

Strategy Strategy::MeanMatch(int n, double k) {
  Strategy s;
  s.kind_ = StrategyKind::kMeanMatch;
  s.name_ = "mean-match";
  s.n_ = n;
  s.k_ = k;
  return s;
}

Strategy Strategy::Counting(int n, double k) {
  Strategy s;
  s.kind_ = StrategyKind::kCounting;
  s.name_ = "counting";
  s.n_ = n;
  s.k_ = k;
  return s;
}

Strategy Strategy::FromTable(int n, double k, Table values, std::string name) {
  for (const auto& [key, v] : values) {
    int a, b, c;
    UnpackTriple(key, &a, &b, &c);
    if (!TripleFeasible(n, a, b, c)) {
      throw Error(ErrorCode::kInvalidInput,
                  "table strategy: infeasible triple (" + std::to_string(a) +
                      "," + std::to_string(b) + "," + std::to_string(c) + ")");
    }
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidInput, "table strategy: non-finite value");
    }
  }
  Strategy s;
  s.kind_ = StrategyKind::kTable;
  s.name_ = std::move(name);
  s.n_ = n;
  s.k_ = k;
  s.table_ = std::move(values);
  return s;
}

Strategy Strategy::Bayes(const Dist& phi, const Dist& phi2, double k) {
  if (phi.n() != phi2.n()) throw Error(ErrorCode::kInvalidInput, "bayes dims");
  Strategy s;
  s.kind_ = StrategyKind::kBayes;
  s.name_ = "bayes";
  s.n_ = phi.n();
  s.k_ = k;
  s.bayes_ = std::make_shared<BayesModel>();
  s.bayes_->phi = phi;
  s.bayes_->phi2 = phi2;
  return s;
}

Strategy Strategy::Custom(int n, double k, std::string name, Function f) {
  Strategy s;
  s.kind_ = StrategyKind::kCustom;
  s.name_ = std::move(name);
  s.n_ = n;
  s.k_ = k;
  s.fn_ = std::move(f);
  return s;
}

double Strategy::EvalTriple(int a, int b, int c) const {
  const double n = n_;
  switch (kind_) {
    case StrategyKind::kMeanMatch:
      return Clamp01(k_ * c / n);
    case StrategyKind::kCounting:
      return Clamp01(k_ * a * b / (n * n));
    case StrategyKind::kTable: {
      auto it = table_.find(PackTriple(a, b, c));
      if (it != table_.end()) return Clamp01(it->second);
      return Clamp01(k_ * a * b / (n * n));
    }
    default:
      throw Error(ErrorCode::kInvalidInput, "strategy is not a triple function");
  }
}

bool PosteriorMean(const Dist& phi, const BitVector& i, double k,
                   std::vector<double>* mean) {
  const int n = phi.n();
  const int wi = i.Weight();
  const double lq = std::log1p(-1.0 / k);
  std::vector<double> logw;
  std::vector<const SupportPoint*> pts;
  double top = -INFINITY;
  for (const SupportPoint& p : phi.points()) {
    if (!i.SubsetOf(p.x)) continue;
    const double lw = std::log(p.weight) + (p.x.Weight() - wi) * lq;
    logw.push_back(lw);
    pts.push_back(&p);
    top = std::max(top, lw);
  }
  if (pts.empty()) return false;
  mean->assign(n, 0.0);
  double total = 0;
  for (size_t t = 0; t < pts.size(); ++t) {
    const double w = std::exp(logw[t] - top);
    total += w;
    for (int s : pts[t]->x.Ones()) (*mean)[s] += w;
  }
  for (double& v : *mean) v /= total;
  return true;
}

double Strategy::Eval(const BitVector& i, const BitVector& j) const {
  switch (kind_) {
    case StrategyKind::kMeanMatch:
    case StrategyKind::kCounting:
    case StrategyKind::kTable:
      return EvalTriple(i.Weight(), j.Weight(), i.Dot(j));
    case StrategyKind::kBayes: {
      std::vector<double> ex, ey;
      if (!PosteriorMean(bayes_->phi, i, k_, &ex) ||
          !PosteriorMean(bayes_->phi2, j, k_, &ey)) {
        bayes_->fallbacks.fetch_add(1, std::memory_order_relaxed);
        const double n = n_;
        return Clamp01(k_ * i.Weight() * j.Weight() / (n * n));
      }
      double s = 0;
      for (int u = 0; u < n_; ++u) s += ex[u] * ey[u];
      return Clamp01(s / (n_ * k_));
    }
    case StrategyKind::kCustom:
      return Clamp01(fn_(i, j));
  }
  return 0;
}

int64_t Strategy::fallbacks() const {
  return bayes_ ? bayes_->fallbacks.load() : 0;
}

std::string Strategy::SerializeTable() const {
  if (kind_ != StrategyKind::kTable) {
    throw Error(ErrorCode::kInvalidInput, "not a table strategy");
  }
  std::map<uint64_t, double> sorted(table_.begin(), table_.end());
  std::ostringstream out;
  out << "table n=" << n_ << " rows=" << sorted.size() << "\n";
  out.precision(17);
  for (const auto& [key, v] : sorted) {
    int a, b, c;
    UnpackTriple(key, &a, &b, &c);
    out << a << " " << b << " " << c << " " << v << "\n";
  }
  return out.str();
}

Strategy Strategy::ParseTable(int n, double k, const std::string& text) {
  std::istringstream in(text);
  std::string tag, nf, rf;
  in >> tag >> nf >> rf;
  if (tag != "table" || rf.rfind("rows=", 0) != 0) {
    throw Error(ErrorCode::kInvalidInput, "table record: bad header");
  }
  const size_t rows = std::stoul(rf.substr(5));
  Table t;
  for (size_t r = 0; r < rows; ++r) {
    int a, b, c;
    double v;
    if (!(in >> a >> b >> c >> v)) {
      throw Error(ErrorCode::kInvalidInput, "table record: truncated");
    }
    t[PackTriple(a, b, c)] = v;
  }
  return FromTable(n, k, std::move(t));
}

void TripleStats::AddCell(uint64_t key, double a, double b, double c) {
  auto& cell = cells_[key];
  cell[0] += a;
  cell[1] += b;
  cell[2] += c;
}

void TripleStats::Accumulate(const TripleStats& other, double scale) {
  if (n_ == 0) {
    n_ = other.n_;
    k_ = other.k_;
  }
  for (const auto& [key, cell] : other.cells_) {
    AddCell(key, scale * cell[0], scale * cell[1], scale * cell[2]);
  }
}

TripleStats TripleStats::Scaled(double scale) const {
  TripleStats out(n_, k_);
  out.Accumulate(*this, scale);
  return out;
}

double TripleStats::MinPayoff() const {
  double total = 0;
  for (const auto& [key, cell] : cells_) {
    if (cell[0] > 0) total += std::max(0.0, cell[2] - cell[1] * cell[1] / cell[0]);
  }
  return total;
}

Strategy TripleStats::Minimizer(const std::string& name) const {
  Strategy::Table t;
  for (const auto& [key, cell] : cells_) {
    if (cell[0] > 0) t[key] = cell[1] / cell[0];
  }
  return Strategy::FromTable(n_, k_, std::move(t), name);
}

double TripleStats::PayoffOf(const Strategy& omega) const {
  double total = 0;
  for (const auto& [key, cell] : cells_) {
    int a, b, c;
    UnpackTriple(key, &a, &b, &c);
    const double w = omega.EvalTriple(a, b, c);
    total += cell[0] * w * w - 2.0 * cell[1] * w + cell[2];
  }
  return std::max(0.0, total);
}

double TripleStats::TotalMass() const {
  double total = 0;
  for (const auto& [key, cell] : cells_) total += cell[0];
  return total;
}

TripleStats ComputeTripleStats(const Dist& phi, const Dist& phi2, double k) {
  if (phi.n() != phi2.n()) throw Error(ErrorCode::kInvalidInput, "stats dims");
  const int n = phi.n();
  TripleStats stats(n, k);
  const double p = 1.0 / k;
  // Pairs with the same overlap counts share the triple law.
  std::map<std::array<int, 3>, std::pair<double, double>> groups;
  for (const SupportPoint& a : phi.points()) {
    const int wa = a.x.Weight();
    for (const SupportPoint& b : phi2.points()) {
      const int c11 = a.x.Dot(b.x);
      auto& g = groups[{c11, wa - c11, b.x.Weight() - c11}];
      g.first += a.weight * b.weight;
    }
  }
  for (const auto& [counts, g] : groups) {
    const double target = counts[0] / (n * k);
    const double mass = g.first;
    TripleLaw(counts[0], counts[1], counts[2], p,
              [&](int ta, int tb, int tc, double prob) {
                const double w = mass * prob;
                stats.AddCell(PackTriple(ta, tb, tc), w, w * target,
                              w * target * target);
              });
  }
  return stats;
}

namespace {

PayoffReport ExactEnumeration(const Strategy& omega, const Dist& phi,
                              const Dist& phi2, double k) {
  const int n = phi.n();
  const double p = 1.0 / k, q = 1.0 - p;
  double total = 0;
  for (const SupportPoint& a : phi.points()) {
    const std::vector<int> xa = a.x.Ones();
    for (const SupportPoint& b : phi2.points()) {
      const std::vector<int> yb = b.x.Ones();
      const double target = a.x.Dot(b.x) / (n * k);
      double sum = 0;
      for (uint32_t mi = 0; mi < (1u << xa.size()); ++mi) {
        BitVector i(n);
        int wi = 0;
        for (size_t t = 0; t < xa.size(); ++t) {
          if ((mi >> t) & 1u) {
            i.Set(xa[t], true);
            ++wi;
          }
        }
        const double pi_ = std::pow(p, wi) * std::pow(q, xa.size() - wi);
        for (uint32_t mj = 0; mj < (1u << yb.size()); ++mj) {
          BitVector j(n);
          int wj = 0;
          for (size_t t = 0; t < yb.size(); ++t) {
            if ((mj >> t) & 1u) {
              j.Set(yb[t], true);
              ++wj;
            }
          }
          const double pj = std::pow(p, wj) * std::pow(q, yb.size() - wj);
          const double d = omega.Eval(i, j) - target;
          sum += pi_ * pj * d * d;
        }
      }
      total += a.weight * b.weight * sum;
    }
  }
  PayoffReport r;
  r.payoff = total;
  r.exact = true;
  return r;
}

}  // namespace

PayoffReport Payoff(const Strategy& omega, const Dist& phi, const Dist& phi2,
                    double k, int64_t trials, Rng& rng, PayoffMode mode) {
  if (phi.n() != phi2.n()) throw Error(ErrorCode::kInvalidInput, "payoff dims");
  if (mode != PayoffMode::kMonteCarlo) {
    if (omega.Invariant()) {
      PayoffReport r;
      r.payoff = ComputeTripleStats(phi, phi2, k).PayoffOf(omega);
      r.exact = true;
      return r;
    }
    if (phi.n() <= 10) return ExactEnumeration(omega, phi, phi2, k);
    if (mode == PayoffMode::kExact) {
      throw Error(ErrorCode::kCapability, "exact payoff needs n <= 10");
    }
  }
  if (trials < 1) throw Error(ErrorCode::kInvalidInput, "trials must be >= 1");
  const double nk = phi.n() * k;
  double sum = 0, sum2 = 0;
  for (int64_t t = 0; t < trials; ++t) {
    const BitVector x = phi.Sample(rng);
    const BitVector y = phi2.Sample(rng);
    const BitVector i = DrawDegraded(x, k, rng);
    const BitVector j = DrawDegraded(y, k, rng);
    const double d = omega.Eval(i, j) - x.Dot(y) / nk;
    sum += d * d;
    sum2 += d * d * d * d;
  }
  PayoffReport r;
  r.trials = trials;
  r.payoff = sum / trials;
  r.stderr_ =
      std::sqrt(std::max(0.0, sum2 / trials - r.payoff * r.payoff) / trials);
  return r;
}

Strategy Symmetrize(const Strategy& omega, Rng* rng, int samples_per_triple) {
  if (omega.Invariant()) return omega;
  const int n = omega.n();
  Strategy::Table table;
  if (n <= 8) {
    std::unordered_map<uint64_t, std::pair<double, int64_t>> acc;
    const uint32_t full = 1u << n;
    for (uint32_t mi = 0; mi < full; ++mi) {
      BitVector i(n);
      for (int s = 0; s < n; ++s) i.Set(s, (mi >> s) & 1u);
      for (uint32_t mj = 0; mj < full; ++mj) {
        BitVector j(n);
        for (int s = 0; s < n; ++s) j.Set(s, (mj >> s) & 1u);
        auto& cell = acc[PackTriple(i.Weight(), j.Weight(), i.Dot(j))];
        cell.first += omega.Eval(i, j);
        ++cell.second;
      }
    }
    for (const auto& [key, cell] : acc) table[key] = cell.first / cell.second;
  } else {
    if (rng == nullptr) {
      throw Error(ErrorCode::kInvalidInput, "sampled symmetrize needs rng");
    }
    for (int a = 0; a <= n; ++a) {
      for (int b = 0; b <= n; ++b) {
        for (int c = 0; c <= std::min(a, b); ++c) {
          if (!TripleFeasible(n, a, b, c)) continue;
          // Canonical pair: i = [0, a), j = [a - c, a - c + b).
          const BitVector i = BitVector::Leading(n, a);
          BitVector j(n);
          for (int s = a - c; s < a - c + b; ++s) j.Set(s, true);
          double sum = 0;
          for (int t = 0; t < samples_per_triple; ++t) {
            const Permutation sigma = Permutation::Random(n, *rng);
            sum += omega.Eval(sigma.Apply(i), sigma.Apply(j));
          }
          table[PackTriple(a, b, c)] = sum / samples_per_triple;
        }
      }
    }
  }
  return Strategy::FromTable(n, omega.k(), std::move(table),
                             "sym(" + omega.name() + ")");
}

double EvalOnPairs(const Strategy& omega, const BitVector& i, const BitVector& j,
                   const PermPair& pair_a, const PermPair& pair_b) {
  double s = 0;
  for (const Permutation& alpha : pair_a) {
    const BitVector ia = alpha.Apply(i);
    for (const Permutation& beta : pair_b) s += omega.Eval(ia, beta.Apply(j));
  }
  return s / 4.0;
}

}  // namespace deeprandom
