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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "deeprandom/distribution.h"
#include "deeprandom/drg.h"
#include "deeprandom/error.h"
#include "deeprandom/harness.h"

namespace deeprandom {
namespace {

std::vector<std::vector<int>> AllPermutations(int n) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(m);
  while (std::next_permutation(m.begin(), m.end()));
  return out;
}

// max over half-size I of |4/n^2 sum_{I x I-bar} m|, by subset masks.
double CNormOracle(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  double best = 0;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != n / 2) continue;
    double s = 0;
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (((mask >> u) & 1u) && !((mask >> v) & 1u)) s += m(u, v);
      }
    }
    best = std::max(best, std::fabs(4.0 / (n * n) * s));
  }
  return best;
}

double Delta0Oracle(const Dist& a, const Dist& b) {
  const int n = a.n();
  double total = 0;
  for (const auto& p : a.points()) {
    for (const auto& q : b.points()) {
      const double d = static_cast<double>(p.x.Weight()) * q.x.Weight() / (n * n) -
                       static_cast<double>(p.x.Dot(q.x)) / n;
      total += p.weight * q.weight * d * d;
    }
  }
  return total;
}

Dist RandomMixture(int n, int points, Rng& rng) {
  std::vector<SupportPoint> pts;
  for (int t = 0; t < points; ++t) {
    BitVector x(n);
    for (int s = 0; s < n; ++s) x.Set(s, rng.Bernoulli(0.5));
    pts.push_back({x, 0.1 + rng.Uniform()});
  }
  return Dist(n, pts);
}

TEST(Dist, MergesAndNormalizes) {
  const BitVector a = BitVector::FromString("1100"), b = BitVector::FromString("0011");
  const Dist d(4, {{a, 1}, {b, 2}, {a, 1}});
  ASSERT_EQ(d.size(), 2u);
  double total = 0;
  for (const auto& p : d.points()) total += p.weight;
  EXPECT_NEAR(total, 1, 1e-15);
  EXPECT_NEAR(d.MassWithOnesIn(2, 2), 1, 1e-15);
  EXPECT_ANY_THROW(Dist(4, {{BitVector(3), 1}}));
}

TEST(Dist, SerializeRoundTrip) {
  Rng rng(1);
  const Dist d = RandomMixture(9, 5, rng);
  const Dist e = Dist::Parse(d.Serialize());
  ASSERT_EQ(e.size(), d.size());
  for (size_t t = 0; t < d.size(); ++t) {
    EXPECT_EQ(e.points()[t].x, d.points()[t].x);
    EXPECT_NEAR(e.points()[t].weight, d.points()[t].weight, 1e-15);
  }
  EXPECT_ANY_THROW(Dist::Parse("garbage"));
}

TEST(Dist, SampleFrequencies) {
  const Dist d(3, {{BitVector::FromString("100"), 1}, {BitVector::FromString("011"), 3}});
  Rng rng(2);
  int hits = 0;
  const int draws = 40000;
  for (int t = 0; t < draws; ++t) hits += d.Sample(rng).Get(0);
  // 4 sd: the suite runs many fixed-seed frequency checks.
  EXPECT_NEAR(hits / static_cast<double>(draws), 0.25, 4 * std::sqrt(0.25 * 0.75 / draws));
}

TEST(QuadMatrix, DiracUniformAndBlockSeed) {
  const BitVector x = BitVector::FromString("10110");
  const QuadMatrix q = QuadMatrixOf(Dist::Dirac(x));
  for (int u = 0; u < 5; ++u) {
    for (int v = 0; v < 5; ++v) EXPECT_EQ(q.values(u, v), x.Get(u) * x.Get(v));
  }
  const QuadMatrix un = QuadMatrixOf(Dist::Uniform(6));
  for (int u = 0; u < 6; ++u) {
    for (int v = 0; v < 6; ++v) EXPECT_NEAR(un.values(u, v), u == v ? 0.5 : 0.25, 1e-15);
  }
  const QuadMatrix b = QuadMatrixOf(BlockSumSeed(8));
  for (int u = 0; u < 8; ++u) {
    for (int v = 0; v < 8; ++v) {
      const double want = u == v ? 0.5 : (u / 4 == v / 4 ? 1.0 / 3 : 0.25);
      EXPECT_NEAR(b.values(u, v), want, 1e-12);
    }
  }
  EXPECT_TRUE(b.IsSymmetric());
  EXPECT_TRUE(b.IsPsd());
  EXPECT_TRUE(b.EntriesInUnit());
}

TEST(QuadMatrix, EquivariantUnderRelabeling) {
  Rng rng(3);
  const Dist d = RandomMixture(6, 4, rng);
  const Eigen::MatrixXd m = QuadMatrixOf(d).values;
  for (const auto& map : AllPermutations(6)) {
    const Permutation s(map);
    ASSERT_LT((QuadMatrixOf(d.Permuted(s)).values - PermuteMatrix(m, s)).norm(), 1e-12);
  }
}

TEST(MBar, ExamplesAndBlockSeedAverage) {
  EXPECT_EQ(MBar(Eigen::MatrixXd::Zero(5, 5)).norm(), 0);
  Eigen::MatrixXd c = Eigen::MatrixXd::Constant(5, 5, 0.3);
  c.diagonal().setZero();
  EXPECT_LT((MBar(c) - c).norm(), 1e-15);
  // n = 8, two blocks of 4: 2 * 12 within-block pairs at 1/3 and 32 cross
  // pairs at 1/4 over 56 ordered pairs.
  const double m = OffDiagonalMean(QuadMatrixOf(BlockSumSeed(8)).values);
  EXPECT_NEAR(m, (24.0 / 3 + 32.0 / 4) / 56, 1e-12);
}

TEST(CNorm, MatchesSubsetOracle) {
  Rng rng(4);
  for (int n : {6, 8, 10}) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) m(u, v) = m(v, u) = rng.Uniform() - 0.5;
    }
    SearchOptions exact;
    exact.mode = SearchMode::kExact;
    const CNormResult r = CNorm(m, exact);
    EXPECT_TRUE(r.exact);
    EXPECT_NEAR(r.value, CNormOracle(m), 1e-12);
    EXPECT_NEAR(std::fabs(4.0 / (n * n) * CutSum(m, r.witness)), r.value, 1e-12);
    SearchOptions heur;
    heur.mode = SearchMode::kHeuristic;
    EXPECT_LE(CNorm(m, heur).value, r.value + 1e-12);
  }
  EXPECT_EQ(CNorm(Eigen::MatrixXd::Zero(6, 6)).value, 0);
}

TEST(CNorm, BlockOfOnesFormula) {
  for (int n : {8, 12, 16}) {
    for (int r = 2; r < n / 2; ++r) {
      const double v = CenteredCNorm(Dist::Dirac(BitVector::Leading(n, r))).value;
      EXPECT_NEAR(v, r * (r - 1.0) / (n * (n - 1.0)), 1e-12) << n << " " << r;
    }
  }
}

TEST(ZetaMember, Examples) {
  EXPECT_FALSE(ZetaMember(Dist::Uniform(8), 1e-6));
  const int n = 12, r = 6;
  const double s = r * (r - 1.0) / (n * (n - 1.0));
  EXPECT_TRUE(ZetaMember(Dist::Dirac(BitVector::Leading(n, r)), 0.9 * s * s));
}

TEST(Delta0, ExamplesAndOracle) {
  EXPECT_EQ(Delta0(Dist::Dirac(BitVector::Leading(6, 6)), Dist::Dirac(BitVector::Leading(6, 6))),
            0);
  const int n = 7;
  EXPECT_NEAR(Delta0(Dist::Dirac(BitVector::FromOnes(n, {0})),
                     Dist::Dirac(BitVector::FromOnes(n, {1}))),
              1.0 / std::pow(n, 4), 1e-18);
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const Dist a = RandomMixture(6, 4, rng), b = RandomMixture(6, 4, rng);
    EXPECT_NEAR(Delta0(a, b), Delta0Oracle(a, b), 1e-12);
    const Permutation s = Permutation::Random(6, rng);
    EXPECT_NEAR(Delta0FromMatrices(QuadMatrixOf(a).values, QuadMatrixOf(b).values, s),
                Delta0Oracle(a, b.Permuted(s)), 1e-12);
  }
}

double GapOracle(const Dist& a, const Dist& b) {
  const Eigen::MatrixXd m = QuadMatrixOf(a).values, m2 = QuadMatrixOf(b).values;
  const double base = (m.array() * m2.array()).sum();
  double best = 0;
  for (const auto& map : AllPermutations(a.n())) {
    const double v = (m.array() * PermuteMatrix(m2, Permutation(map)).array()).sum();
    best = std::max(best, std::fabs(base - v));
  }
  return best;
}

TEST(PermGap, ExchangeableAndOracle) {
  Rng rng(6);
  const Dist a = RandomMixture(6, 3, rng);
  EXPECT_NEAR(PermGap(a, Dist::Uniform(6)).value, 0, 1e-12);
  for (int t = 0; t < 5; ++t) {
    const Dist x = Dist::Dirac(RandomMixture(6, 1, rng).points()[0].x);
    const Dist y = Dist::Dirac(RandomMixture(6, 1, rng).points()[0].x);
    const PermGapResult r = PermGap(x, y);
    EXPECT_TRUE(r.exact);
    EXPECT_NEAR(r.value, GapOracle(x, y), 1e-12);
  }
}

TEST(PermGap, InvariantUnderSimultaneousRelabeling) {
  Rng rng(7);
  for (int t = 0; t < 5; ++t) {
    const Dist a = RandomMixture(7, 3, rng), b = RandomMixture(7, 3, rng);
    const Permutation tau = Permutation::Random(7, rng);
    EXPECT_NEAR(PermGap(a, b).value, PermGap(a.Permuted(tau), b.Permuted(tau)).value, 1e-12);
  }
}

TEST(Tidy, ExchangeableScatteredAndIdempotent) {
  const TidyResult u = Tidy(Dist::Uniform(6));
  EXPECT_TRUE(u.sigma.IsIdentity());
  const Dist scattered = Dist::Dirac(BitVector::FromString("101010"));
  const TidyResult t = Tidy(scattered);
  EXPECT_TRUE(t.exact);
  const Eigen::MatrixXd m = QuadMatrixOf(t.tidied).values;
  // Exhaustive minimum of the leading-block cut over all relabelings.
  const Eigen::MatrixXd m0 = QuadMatrixOf(scattered).values;
  double best = INFINITY;
  for (const auto& map : AllPermutations(6)) {
    best = std::min(best, CutSum(PermuteMatrix(m0, Permutation(map)), {0, 1, 2}));
  }
  EXPECT_NEAR(CutSum(m, {0, 1, 2}), best, 1e-12);
  EXPECT_EQ(t.tidied.points()[0].x.ToString(), "111000");
  EXPECT_TRUE(Tidy(t.tidied).sigma.IsIdentity());
}

TEST(Tidy, MixturesOfTidiedStayTidied) {
  Rng rng(8);
  std::vector<Dist> parts;
  for (int t = 0; t < 3; ++t) parts.push_back(Tidy(RandomZetaDist(8, 0.001, rng)).tidied);
  std::vector<std::pair<const Dist*, double>> w;
  for (const Dist& d : parts) w.push_back({&d, 1.0});
  const Dist mix = Dist::Mixture(w);
  const Eigen::MatrixXd m = QuadMatrixOf(mix).values;
  const TidyResult r = Tidy(mix);
  EXPECT_NEAR(CutSum(QuadMatrixOf(r.tidied).values, {0, 1, 2, 3}), CutSum(m, {0, 1, 2, 3}),
              1e-12);
}

TEST(Synchronize, GateBoundAndSelf) {
  Rng rng(9);
  const Dist a = RandomZetaDist(8, 0.001, rng), b = RandomZetaDist(8, 0.001, rng);
  EXPECT_THROW(Synchronize(a, Dist::Uniform(8), 0.001), Error);
  SearchOptions exact;
  exact.mode = SearchMode::kExact;
  const SyncResult s = Synchronize(a, b, 0.001, exact);
  EXPECT_TRUE(s.exact);
  const double gap = PermGap(a, b, exact).value;
  EXPECT_GE(s.achieved, std::pow(gap / (4.0 * 64), 2) - 1e-15);
  EXPECT_NEAR(s.achieved, Delta0(a, b.Permuted(s.sigma)), 1e-12);
  EXPECT_DOUBLE_EQ(s.threshold, 0.0);  // alpha/4 - 1/n is negative here
  EXPECT_NEAR(s.threshold_alt, 0.001 / 4 - 1.0 / 64, 1e-15);
  EXPECT_TRUE(s.synchronized);
}

TEST(CNorm, NormAxiomsOnRandomMatrices) {
  Rng rng(10);
  for (int n : {6, 8}) {
    for (int t = 0; t < 100; ++t) {
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n), b = a;
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          a(u, v) = a(v, u) = rng.Uniform() - 0.5;
          b(u, v) = b(v, u) = rng.Uniform() - 0.5;
        }
      }
      const double l = 3 * rng.Uniform() - 1.5;
      EXPECT_NEAR(CNorm(l * a).value, std::fabs(l) * CNorm(a).value, 1e-12);
      EXPECT_LE(CNorm(a + b).value, CNorm(a).value + CNorm(b).value + 1e-12);
      EXPECT_GT(CNorm(a).value, 0);
    }
  }
}

}  // namespace
}  // namespace deeprandom
