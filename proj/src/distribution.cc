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

#include "deeprandom/distribution.h"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "deeprandom/error.h"
#include "deeprandom/kernels.h"

namespace deeprandom {
namespace {

constexpr double kWeightTol = 1e-12;

double BinomialCoefficient(int n, int r) {
  return std::exp(LogBinomial(n, r));
}

// Balanced bisection local search. `sign` = +1 maximizes the cut, -1
// minimizes it. `side[u]` is +1 inside the set, -1 outside.
double LocalCut(const Eigen::MatrixXd& m, std::vector<int>& side, int sign) {
  const int n = static_cast<int>(m.rows());
  Eigen::VectorXd z(n);
  for (int u = 0; u < n; ++u) z[u] = side[u];
  Eigen::VectorXd y = m * z;
  double cut = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (side[u] > 0 && side[v] < 0) cut += m(u, v);
    }
  }
  const double tol = 1e-13 * (1.0 + m.cwiseAbs().maxCoeff() * n);
  for (int iter = 0; iter < 8 * n * n; ++iter) {
    // a(u) = internal minus external mass of u.
    double best = tol;
    int bu = -1, bv = -1;
    for (int u = 0; u < n; ++u) {
      if (side[u] < 0) continue;
      const double au = z[u] * y[u] - m(u, u);
      for (int v = 0; v < n; ++v) {
        if (side[v] > 0) continue;
        const double av = z[v] * y[v] - m(v, v);
        const double g = sign * (au + av + 2.0 * m(u, v));
        if (g > best) {
          best = g;
          bu = u;
          bv = v;
        }
      }
    }
    if (bu < 0) break;
    cut += sign * best;
    y -= 2.0 * z[bu] * m.col(bu);
    y -= 2.0 * z[bv] * m.col(bv);
    z[bu] = -z[bu];
    z[bv] = -z[bv];
    side[bu] = -side[bu];
    side[bv] = -side[bv];
  }
  return cut;
}

std::vector<int> SideToSet(const std::vector<int>& side) {
  // Canonical representative: the half that contains index 0.
  const int want = side[0];
  std::vector<int> out;
  for (int u = 0; u < static_cast<int>(side.size()); ++u) {
    if (side[u] == want) out.push_back(u);
  }
  return out;
}

struct HeuristicCut {
  double max_cut = -INFINITY;
  std::vector<int> max_set;
  double min_cut = INFINITY;
  std::vector<int> min_set;
};

std::vector<int> InitialSide(const Eigen::MatrixXd& m, int restart, Rng& rng) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (restart == 0) {
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return m(a, a) > m(b, b); });
  } else if (restart > 1) {
    for (int s = n - 1; s > 0; --s) std::swap(order[s], order[rng.Below(s + 1)]);
  }
  std::vector<int> side(n, -1);
  for (int t = 0; t < n / 2; ++t) side[order[t]] = 1;
  return side;
}

void Better(double value, std::vector<int> set, int sign, double& best,
            std::vector<int>& best_set) {
  const int64_t k = kernels::TieKey(sign * value);
  const int64_t kb = kernels::TieKey(sign * best);
  if (best_set.empty() || k > kb || (k == kb && set < best_set)) {
    best = value;
    best_set = std::move(set);
  }
}

HeuristicCut HeuristicCuts(const Eigen::MatrixXd& m, const SearchOptions& opt,
                           double centre, double scale) {
  const int restarts = std::max(1, opt.restarts);
  HeuristicCut out;
  const int chunk = 4;
  for (int start = 0; start < restarts; start += chunk) {
    const int stop = std::min(restarts, start + chunk);
    std::vector<HeuristicCut> parts(stop - start);
#pragma omp parallel for schedule(dynamic, 1) if (opt.parallel) \
    num_threads(kernels::Workers())
    for (int r = start; r < stop; ++r) {
      Rng rng(Rng::Derive(opt.seed, r));
      HeuristicCut& h = parts[r - start];
      std::vector<int> side = InitialSide(m, r, rng);
      h.max_cut = LocalCut(m, side, +1);
      h.max_set = SideToSet(side);
      side = InitialSide(m, r, rng);
      h.min_cut = LocalCut(m, side, -1);
      h.min_set = SideToSet(side);
    }
    for (HeuristicCut& h : parts) {
      Better(h.max_cut, h.max_set, +1, out.max_cut, out.max_set);
      Better(h.min_cut, h.min_set, -1, out.min_cut, out.min_set);
    }
    if (opt.stop_at >= 0) {
      const double v = std::max(std::abs(out.max_cut * scale - centre),
                                std::abs(out.min_cut * scale - centre));
      if (v >= opt.stop_at) break;
    }
  }
  return out;
}

// Objective P(sigma) = sum M(u,v) M2(sigma u, sigma v) change when the
// images of a and b are exchanged.
double SwapDeltaP(const Eigen::MatrixXd& m, const Eigen::MatrixXd& m2,
                  const std::vector<int>& p, int a, int b) {
  const int n = static_cast<int>(m.rows());
  const int pa = p[a], pb = p[b];
  double d = 0;
  for (int v = 0; v < n; ++v) {
    if (v == a || v == b) continue;
    d += (m(a, v) - m(b, v)) * (m2(pb, p[v]) - m2(pa, p[v]));
  }
  d *= 2.0;
  d += (m(a, a) - m(b, b)) * (m2(pb, pb) - m2(pa, pa));
  return d;
}

double PValue(const Eigen::MatrixXd& m, const Eigen::MatrixXd& m2,
              const std::vector<int>& p) {
  const int n = static_cast<int>(m.rows());
  double s = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) s += m(u, v) * m2(p[u], p[v]);
  }
  return s;
}

// Transposition hill climbing on f(p) = P(p) * wp + sum_u l(u) r2(p u) * wl,
// maximized when sign = +1 and minimized when sign = -1.
struct SwapObjective {
  const Eigen::MatrixXd* m;
  const Eigen::MatrixXd* m2;
  double wp = 1.0;
  const Eigen::VectorXd* r = nullptr;
  const Eigen::VectorXd* r2 = nullptr;
  double wl = 0.0;

  double Value(const std::vector<int>& p) const {
    double v = wp * PValue(*m, *m2, p);
    if (r) {
      for (int u = 0; u < static_cast<int>(p.size()); ++u) {
        v += wl * (*r)[u] * (*r2)[p[u]];
      }
    }
    return v;
  }
  double Delta(const std::vector<int>& p, int a, int b) const {
    double d = wp * SwapDeltaP(*m, *m2, p, a, b);
    if (r) d += wl * ((*r)[a] - (*r)[b]) * ((*r2)[p[b]] - (*r2)[p[a]]);
    return d;
  }
};

std::pair<double, std::vector<int>> HillClimb(const SwapObjective& obj, int n,
                                              int sign,
                                              const SearchOptions& opt) {
  const int restarts = std::max(1, opt.restarts);
  std::vector<std::pair<double, std::vector<int>>> parts(restarts);
#pragma omp parallel for schedule(dynamic, 1) if (opt.parallel) \
    num_threads(kernels::Workers())
  for (int r = 0; r < restarts; ++r) {
    Rng rng(Rng::Derive(opt.seed, 7919, r));
    std::vector<int> p =
        r == 0 ? Permutation::Identity(n).map() : Permutation::Random(n, rng).map();
    double value = obj.Value(p);
    const double tol = 1e-13 * (1.0 + std::abs(value));
    for (int iter = 0; iter < 64 * n; ++iter) {
      double best = tol;
      int ba = -1, bb = -1;
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          const double g = sign * obj.Delta(p, a, b);
          if (g > best) {
            best = g;
            ba = a;
            bb = b;
          }
        }
      }
      if (ba < 0) break;
      std::swap(p[ba], p[bb]);
      value += sign * best;
    }
    parts[r] = {obj.Value(p), p};
  }
  std::pair<double, std::vector<int>> best = parts[0];
  for (int r = 1; r < restarts; ++r) {
    const int64_t k = kernels::TieKey(sign * parts[r].first);
    const int64_t kb = kernels::TieKey(sign * best.first);
    if (k > kb || (k == kb && parts[r].second < best.second)) best = parts[r];
  }
  return best;
}

bool UseExactPerm(const SearchOptions& opt, int n) {
  if (opt.mode == SearchMode::kExact) {
    if (n > 8) {
      throw Error(ErrorCode::kCapability,
                  "exact permutation sweep requires n <= 8");
    }
    return true;
  }
  return opt.mode == SearchMode::kAuto && n <= 8;
}

}  // namespace

Dist::Dist(int n, const std::vector<SupportPoint>& points) : n_(n) {
  if (points.empty()) throw Error(ErrorCode::kInvalidInput, "empty support");
  std::map<BitVector, double> merged;
  double total = 0;
  for (const SupportPoint& p : points) {
    if (p.x.size() != n) {
      throw Error(ErrorCode::kInvalidInput, "support point dimension");
    }
    if (!(p.weight > 0) || !std::isfinite(p.weight)) {
      throw Error(ErrorCode::kInvalidInput, "weights must be positive");
    }
    merged[p.x] += p.weight;
    total += p.weight;
  }
  points_.reserve(merged.size());
  double acc = 0;
  for (auto& [x, w] : merged) {
    points_.push_back({x, w / total});
    acc += w / total;
    cumulative_.push_back(acc);
  }
  cumulative_.back() = 1.0;
}

Dist Dist::Dirac(const BitVector& x) { return Dist(x.size(), {{x, 1.0}}); }

Dist Dist::Uniform(int n) {
  if (n > 20) throw Error(ErrorCode::kCapability, "uniform needs n <= 20");
  std::vector<SupportPoint> pts;
  pts.reserve(1u << n);
  for (uint32_t code = 0; code < (1u << n); ++code) {
    BitVector x(n);
    for (int s = 0; s < n; ++s) x.Set(s, (code >> s) & 1u);
    pts.push_back({x, 1.0});
  }
  return Dist(n, pts);
}

Dist Dist::Mixture(const std::vector<std::pair<const Dist*, double>>& parts) {
  std::vector<SupportPoint> pts;
  int n = -1;
  for (const auto& [d, w] : parts) {
    if (w <= 0) continue;
    if (n >= 0 && d->n() != n) {
      throw Error(ErrorCode::kInvalidInput, "mixture dimension mismatch");
    }
    n = d->n();
    for (const SupportPoint& p : d->points()) pts.push_back({p.x, p.weight * w});
  }
  if (n < 0) throw Error(ErrorCode::kInvalidInput, "empty mixture");
  return Dist(n, pts);
}

Dist Dist::Permuted(const Permutation& sigma) const {
  std::vector<SupportPoint> pts;
  pts.reserve(points_.size());
  for (const SupportPoint& p : points_) pts.push_back({sigma.Apply(p.x), p.weight});
  return Dist(n_, pts);
}

BitVector Dist::Sample(Rng& rng) const {
  const double u = rng.Uniform();
  const size_t idx = std::upper_bound(cumulative_.begin(), cumulative_.end(), u) -
                     cumulative_.begin();
  return points_[std::min(idx, points_.size() - 1)].x;
}

Dist Dist::Resampled(size_t max_points, Rng& rng) const {
  if (points_.size() <= max_points) return *this;
  std::vector<SupportPoint> pts;
  pts.reserve(max_points);
  for (size_t t = 0; t < max_points; ++t) pts.push_back({Sample(rng), 1.0});
  return Dist(n_, pts);
}

double Dist::MassWithOnesIn(double lo, double hi) const {
  double mass = 0;
  for (const SupportPoint& p : points_) {
    const int w = p.x.Weight();
    if (w >= lo && w <= hi) mass += p.weight;
  }
  return mass;
}

std::string Dist::Serialize() const {
  std::ostringstream out;
  out << "dist n=" << n_ << " size=" << points_.size() << "\n";
  char buf[64];
  for (const SupportPoint& p : points_) {
    std::snprintf(buf, sizeof(buf), "%.17g", p.weight);
    out << p.x.ToString() << " " << buf << "\n";
  }
  return out.str();
}

Dist Dist::Parse(const std::string& text) {
  std::istringstream in(text);
  std::string tag, nfield, sfield;
  in >> tag >> nfield >> sfield;
  if (tag != "dist" || nfield.rfind("n=", 0) != 0 || sfield.rfind("size=", 0) != 0) {
    throw Error(ErrorCode::kInvalidInput, "dist record: bad header");
  }
  const int n = std::stoi(nfield.substr(2));
  const size_t size = std::stoul(sfield.substr(5));
  std::vector<SupportPoint> pts;
  for (size_t t = 0; t < size; ++t) {
    std::string bits;
    double w;
    if (!(in >> bits >> w)) {
      throw Error(ErrorCode::kInvalidInput, "dist record: truncated");
    }
    if (static_cast<int>(bits.size()) != n) {
      throw Error(ErrorCode::kInvalidInput, "dist record: bad row length");
    }
    pts.push_back({BitVector::FromString(bits), w});
  }
  return Dist(n, pts);
}

bool QuadMatrix::IsSymmetric(double tol) const {
  return (values - values.transpose()).cwiseAbs().maxCoeff() <= tol;
}

bool QuadMatrix::IsPsd(double tol) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(values,
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

bool QuadMatrix::EntriesInUnit(double tol) const {
  return values.minCoeff() >= -tol && values.maxCoeff() <= 1.0 + tol;
}

QuadMatrix QuadMatrixOf(const Dist& phi) {
  const int n = phi.n();
  QuadMatrix q{Eigen::MatrixXd::Zero(n, n)};
  for (const SupportPoint& p : phi.points()) {
    const std::vector<int> ones = p.x.Ones();
    for (int a : ones) {
      for (int b : ones) q.values(a, b) += p.weight;
    }
  }
  return q;
}

double OffDiagonalMean(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  if (n < 2) throw Error(ErrorCode::kInvalidInput, "n must be >= 2");
  return (m.sum() - m.trace()) / (static_cast<double>(n) * (n - 1));
}

Eigen::MatrixXd MBar(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::MatrixXd out = Eigen::MatrixXd::Constant(n, n, OffDiagonalMean(m));
  out.diagonal().setZero();
  return out;
}

Eigen::MatrixXd Centered(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd out = m - MBar(m);
  out.diagonal().setZero();
  return out;
}

Eigen::MatrixXd PermuteMatrix(const Eigen::MatrixXd& m, const Permutation& sigma) {
  const int n = static_cast<int>(m.rows());
  Eigen::MatrixXd out(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) out(u, v) = m(sigma(u), sigma(v));
  }
  return out;
}

double CutSum(const Eigen::MatrixXd& m, const std::vector<int>& set) {
  const int n = static_cast<int>(m.rows());
  std::vector<char> in(n, 0);
  for (int s : set) in[s] = 1;
  double c = 0;
  for (int u = 0; u < n; ++u) {
    if (!in[u]) continue;
    for (int v = 0; v < n; ++v) {
      if (!in[v]) c += m(u, v);
    }
  }
  return c;
}

bool CNormExactFeasible(int n) {
  return n % 2 == 0 && n <= 30 && BinomialCoefficient(n, n / 2) <= 1e7 + 0.5;
}

CNormResult CNorm(const Eigen::MatrixXd& m, const SearchOptions& opt) {
  const int n = static_cast<int>(m.rows());
  if (n % 2 != 0) throw Error(ErrorCode::kInvalidInput, "c-norm needs even n");
  if (n <= 4) throw Error(ErrorCode::kInvalidInput, "c-norm needs n > 4");
  const double scale = 4.0 / (static_cast<double>(n) * n);
  const bool feasible = CNormExactFeasible(n);
  if (opt.mode == SearchMode::kExact && !feasible) {
    throw Error(ErrorCode::kCapability, "exact c-norm needs C(n,n/2) <= 1e7");
  }
  CNormResult r;
  if (feasible && opt.mode != SearchMode::kHeuristic) {
    const kernels::SubsetExtremes ex = opt.parallel
                                           ? kernels::parallel::SubsetSweep(m)
                                           : kernels::serial::SubsetSweep(m);
    r.exact = true;
    const int64_t kmax = kernels::TieKey(std::abs(ex.max_cut));
    const int64_t kmin = kernels::TieKey(std::abs(ex.min_cut));
    if (kmax > kmin || (kmax == kmin && ex.max_set <= ex.min_set)) {
      r.value = std::abs(ex.max_cut) * scale;
      r.witness = ex.max_set;
    } else {
      r.value = std::abs(ex.min_cut) * scale;
      r.witness = ex.min_set;
    }
    return r;
  }
  SearchOptions o = opt;
  const HeuristicCut h = HeuristicCuts(m, o, 0.0, scale);
  if (std::abs(h.max_cut) >= std::abs(h.min_cut)) {
    r.value = std::abs(h.max_cut) * scale;
    r.witness = h.max_set;
  } else {
    r.value = std::abs(h.min_cut) * scale;
    r.witness = h.min_set;
  }
  return r;
}

CNormResult CenteredCNorm(const Dist& phi, const SearchOptions& opt) {
  return CNorm(Centered(QuadMatrixOf(phi).values), opt);
}

bool ZetaMember(const Dist& phi, double alpha, const SearchOptions& opt) {
  if (!(alpha > 0)) throw Error(ErrorCode::kInvalidInput, "alpha must be > 0");
  SearchOptions o = opt;
  o.stop_at = std::sqrt(alpha);
  return CenteredCNorm(phi, o).value >= std::sqrt(alpha);
}

double Delta0(const Dist& phi, const Dist& phi2) {
  if (phi.n() != phi2.n()) throw Error(ErrorCode::kInvalidInput, "delta0 dims");
  const double n = phi.n();
  double total = 0;
  for (const SupportPoint& a : phi.points()) {
    const double wa = a.x.Weight();
    for (const SupportPoint& b : phi2.points()) {
      const double d = wa * b.x.Weight() / (n * n) - a.x.Dot(b.x) / n;
      total += a.weight * b.weight * d * d;
    }
  }
  return total;
}

double Delta0FromMatrices(const Eigen::MatrixXd& m, const Eigen::MatrixXd& m2,
                          const Permutation& sigma) {
  const int n = static_cast<int>(m.rows());
  const double dn = n;
  const Eigen::VectorXd r = m.rowwise().sum();
  const Eigen::VectorXd r2 = m2.rowwise().sum();
  double cross = 0, quad = 0;
  for (int u = 0; u < n; ++u) {
    cross += r[u] * r2[sigma(u)];
    for (int v = 0; v < n; ++v) quad += m(u, v) * m2(sigma(u), sigma(v));
  }
  return m.sum() * m2.sum() / (dn * dn * dn * dn) -
         2.0 * cross / (dn * dn * dn) + quad / (dn * dn);
}

PermGapResult PermGapOfMatrices(const Eigen::MatrixXd& m,
                                const Eigen::MatrixXd& m2,
                                const SearchOptions& opt) {
  const int n = static_cast<int>(m.rows());
  const double base = (m.array() * m2.array()).sum();
  PermGapResult r;
  if (UseExactPerm(opt, n)) {
    auto f = [&](const std::vector<int>& p) {
      return std::abs(base - PValue(m, m2, p));
    };
    const kernels::PermSweepResult s = opt.parallel
                                           ? kernels::parallel::PermSweep(n, f)
                                           : kernels::serial::PermSweep(n, f);
    r.value = s.best;
    r.argmax = Permutation(s.argmax);
    r.exact = true;
    return r;
  }
  SwapObjective obj{&m, &m2};
  const auto hi = HillClimb(obj, n, +1, opt);
  const auto lo = HillClimb(obj, n, -1, opt);
  if (std::abs(base - lo.first) >= std::abs(hi.first - base)) {
    r.value = std::abs(base - lo.first);
    r.argmax = Permutation(lo.second);
  } else {
    r.value = std::abs(hi.first - base);
    r.argmax = Permutation(hi.second);
  }
  return r;
}

PermGapResult PermGap(const Dist& phi, const Dist& phi2, const SearchOptions& opt) {
  if (phi.n() != phi2.n()) throw Error(ErrorCode::kInvalidInput, "perm_gap dims");
  return PermGapOfMatrices(QuadMatrixOf(phi).values, QuadMatrixOf(phi2).values,
                           opt);
}

Permutation TidyingPermutation(const Eigen::MatrixXd& m, const SearchOptions& opt,
                               bool* exact) {
  const int n = static_cast<int>(m.rows());
  if (n % 2 != 0) throw Error(ErrorCode::kInvalidInput, "tidy needs even n");
  const bool feasible = CNormExactFeasible(n);
  if (opt.mode == SearchMode::kExact && !feasible) {
    throw Error(ErrorCode::kCapability, "exact tidy needs C(n,n/2) <= 1e7");
  }
  std::vector<int> set;
  if (feasible && opt.mode != SearchMode::kHeuristic) {
    set = (opt.parallel ? kernels::parallel::SubsetSweep(m)
                        : kernels::serial::SubsetSweep(m))
              .min_set;
    if (exact) *exact = true;
  } else {
    SearchOptions o = opt;
    o.stop_at = -1;
    set = HeuristicCuts(m, o, 0.0, 1.0).min_set;
    if (exact) *exact = false;
  }
  return Permutation::ForLeadingSet(n, set);
}

TidyResult Tidy(const Dist& phi, const SearchOptions& opt) {
  TidyResult r;
  r.sigma = TidyingPermutation(QuadMatrixOf(phi).values, opt, &r.exact);
  r.tidied = phi.Permuted(r.sigma);
  return r;
}

SyncResult Synchronize(const Dist& phi, const Dist& phi2, double alpha,
                       const SearchOptions& opt) {
  if (phi.n() != phi2.n()) throw Error(ErrorCode::kInvalidInput, "sync dims");
  if (!ZetaMember(phi, alpha, opt) || !ZetaMember(phi2, alpha, opt)) {
    throw Error(ErrorCode::kPrecondition,
                "synchronize: inputs must belong to zeta(alpha)");
  }
  const int n = phi.n();
  const double dn = n;
  const Eigen::MatrixXd m = QuadMatrixOf(phi).values;
  const Eigen::MatrixXd m2 = QuadMatrixOf(phi2).values;
  SyncResult r;
  if (UseExactPerm(opt, n)) {
    auto f = [&](const std::vector<int>& p) {
      return Delta0FromMatrices(m, m2, Permutation(p));
    };
    const kernels::PermSweepResult s = opt.parallel
                                           ? kernels::parallel::PermSweep(n, f)
                                           : kernels::serial::PermSweep(n, f);
    r.sigma = Permutation(s.argmax);
    r.achieved = s.best;
    r.exact = true;
  } else {
    const Eigen::VectorXd rr = m.rowwise().sum();
    const Eigen::VectorXd rr2 = m2.rowwise().sum();
    SwapObjective obj{&m, &m2, 1.0 / (dn * dn), &rr, &rr2, -2.0 / (dn * dn * dn)};
    const auto best = HillClimb(obj, n, +1, opt);
    r.sigma = Permutation(best.second);
    r.achieved = Delta0FromMatrices(m, m2, r.sigma);
  }
  const double t = alpha / 4.0 - 1.0 / dn;
  r.threshold = t > 0 ? t * t : 0.0;
  r.threshold_alt = alpha / 4.0 - 1.0 / (dn * dn);
  r.synchronized = r.achieved >= r.threshold;
  return r;
}

}  // namespace deeprandom
