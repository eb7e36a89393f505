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

#include <cmath>

#include "deeprandom/bernoulli.h"
#include "deeprandom/error.h"
#include "deeprandom/rng.h"

namespace deeprandom {
namespace {

BitVector FromMask(int n, uint32_t mask) {
  BitVector b(n);
  for (int s = 0; s < n; ++s) b.Set(s, (mask >> s) & 1u);
  return b;
}

ParamVector RandomParams(int n, Rng& rng) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.Uniform();
  return ParamVector(v);
}

// Independent oracle: product form written out longhand.
double ChiOracle(uint32_t mask, const std::vector<double>& x) {
  double p = 1;
  for (size_t s = 0; s < x.size(); ++s) p *= ((mask >> s) & 1u) ? x[s] : 1 - x[s];
  return p;
}

TEST(BitVector, RoundTripAndAlgebra) {
  const BitVector a = BitVector::FromString("1011001");
  EXPECT_EQ(a.ToString(), "1011001");
  EXPECT_EQ(a.Weight(), 4);
  const BitVector b = BitVector::FromString("0011101");
  EXPECT_EQ(a.Dot(b), 3);
  EXPECT_EQ((a & b).ToString(), "0011001");
  EXPECT_EQ((a | b).ToString(), "1011101");
  EXPECT_EQ((a ^ b).ToString(), "1000100");
  EXPECT_EQ(a.Complement().ToString(), "0100110");
  EXPECT_TRUE((a & b).SubsetOf(a));
  EXPECT_EQ(BitVector::Leading(5, 2).ToString(), "11000");
  EXPECT_EQ(BitVector::FromOnes(4, {1, 3}).ToString(), "0101");
}

TEST(BitVector, WideVectorsCrossWordBoundaries) {
  BitVector v(130);
  v.Set(0, true);
  v.Set(64, true);
  v.Set(129, true);
  EXPECT_EQ(v.Weight(), 3);
  EXPECT_EQ(v.Ones(), (std::vector<int>{0, 64, 129}));
  EXPECT_EQ(v.Complement().Weight(), 127);
}

TEST(Chi, SmallExamples) {
  EXPECT_DOUBLE_EQ(Chi(BitVector::FromString("10"), ParamVector({0.5, 0.5})), 0.25);
  EXPECT_DOUBLE_EQ(Chi(BitVector::FromString("11"), ParamVector({1, 1})), 1.0);
  // Middle coordinate off: 0.2 * (1 - 0.5) * 0.9.
  EXPECT_NEAR(Chi(BitVector::FromString("101"), ParamVector({0.2, 0.5, 0.9})), 0.09,
              1e-15);
}

TEST(Chi, SumsToOneExhaustively) {
  Rng rng(11);
  for (int n : {1, 5, 10, 14}) {
    const ParamVector x = RandomParams(n, rng);
    double total = 0;
    for (uint32_t m = 0; m < (1u << n); ++m) total += Chi(FromMask(n, m), x);
    EXPECT_NEAR(total, 1.0, 1e-10) << "n=" << n;
  }
}

TEST(Chi, MatchesLonghandProduct) {
  Rng rng(12);
  const ParamVector x = RandomParams(7, rng);
  for (uint32_t m = 0; m < 128; ++m) {
    EXPECT_NEAR(Chi(FromMask(7, m), x), ChiOracle(m, x.values()), 1e-15);
  }
}

TEST(Pi, IsSupersetSumOfChi) {
  EXPECT_DOUBLE_EQ(Pi(BitVector(4), ParamVector({0.3, 0.1, 0.7, 0.2})), 1.0);
  EXPECT_DOUBLE_EQ(Pi(BitVector::FromString("11"), ParamVector({0.5, 0.5})), 0.25);
  Rng rng(13);
  for (int n : {6, 10}) {
    const ParamVector x = RandomParams(n, rng);
    for (int t = 0; t < 20; ++t) {
      const uint32_t j = static_cast<uint32_t>(rng.Below(1u << n));
      double sum = 0;
      for (uint32_t i = 0; i < (1u << n); ++i) {
        if ((i & j) == j) sum += ChiOracle(i, x.values());
      }
      EXPECT_NEAR(Pi(FromMask(n, j), x), sum, 1e-12);
    }
  }
}

TEST(Psi, CountsFiringCoordinatesInsideI) {
  Rng rng(14);
  const int n = 8;
  const ParamVector x = RandomParams(n, rng);
  for (uint32_t i = 0; i < (1u << n); i += 7) {
    const int w = __builtin_popcount(i);
    for (int r = 0; r <= w; ++r) {
      double oracle = 0;
      for (uint32_t j = 0; j < (1u << n); ++j) {
        if (__builtin_popcount(i & j) == r) oracle += ChiOracle(j, x.values());
      }
      EXPECT_NEAR(Psi(FromMask(n, i), r, x), oracle, 1e-12);
    }
  }
}

TEST(Psi, ThinningIdentity) {
  Rng rng(15);
  const int n = 10;
  for (double k : {2.0, 4.0, 8.0}) {
    const ParamVector x = RandomParams(n, rng);
    for (uint32_t m = 0; m < (1u << n); ++m) {
      const BitVector i = FromMask(n, m);
      for (int l = 1; l <= i.Weight(); ++l) {
        double rhs = 0;
        for (int r = l; r <= i.Weight(); ++r) rhs += Beta(l, r, 1 / k) * Psi(i, r, x);
        ASSERT_NEAR(Psi(i, l, x.Scaled(k)), rhs, 1e-9);
      }
    }
  }
}

TEST(Beta, ExamplesAndLargeArguments) {
  EXPECT_DOUBLE_EQ(Beta(0, 0, 0.3), 1.0);
  EXPECT_DOUBLE_EQ(Beta(1, 2, 0.5), 0.5);
  EXPECT_THROW(Beta(3, 2, 0.5), Error);
  // l = 20, k = 4, offset 10 sits under the Gaussian envelope.
  EXPECT_LE(Beta(20, 90, 0.25), std::exp(-100.0 / (2 * 16 * 20)));
  // Binomial row sums to one above the exact-arithmetic range.
  double total = 0;
  for (int l = 0; l <= 200; ++l) total += Beta(l, 200, 0.3);
  EXPECT_NEAR(total, 1.0, 1e-10);
  EXPECT_NEAR(Beta(40, 100, 0.4),
              std::exp(std::lgamma(101.0) - std::lgamma(41.0) - std::lgamma(61.0) +
                       40 * std::log(0.4) + 60 * std::log(0.6)),
              1e-12);
}

TEST(Draw, DegenerateParameters) {
  Rng rng(16);
  EXPECT_EQ(Draw(ParamVector::Constant(9, 0), rng).Weight(), 0);
  EXPECT_EQ(Draw(ParamVector::Constant(9, 1), rng).Weight(), 9);
}

TEST(Draw, MeanWeightWithinBinomialBand) {
  Rng rng(17);
  const int n = 128;
  const int draws = 100000;
  const ParamVector x = ParamVector::Constant(n, 0.25);
  double total = 0;
  for (int t = 0; t < draws; ++t) total += Draw(x, rng).Weight();
  const double sd = std::sqrt(n * 0.25 * 0.75 / draws);
  EXPECT_NEAR(total / draws, 32.0, 3 * sd);
}

TEST(Draw, DegradedOnlyTouchesOnes) {
  Rng rng(18);
  const BitVector w = BitVector::FromString("1100110011");
  for (int t = 0; t < 200; ++t) EXPECT_TRUE(DrawDegraded(w, 3, rng).SubsetOf(w));
}

TEST(VHat, ExamplesAndEquivariance) {
  EXPECT_DOUBLE_EQ(VHat(ParamVector({0.3, 0.4}), BitVector(2)), 0.0);
  EXPECT_DOUBLE_EQ(VHat(ParamVector::Constant(8, 1), BitVector::Leading(8, 3)), 3.0 / 8);
  EXPECT_DOUBLE_EQ(VHat(ParamVector({0.2, 0.8}), BitVector::FromString("11")), 0.5);
}

TEST(Moments, ClosedFormExamples) {
  const MomentsReport r =
      Moments(ParamVector::Constant(4, 1), ParamVector::Constant(4, 1), 2);
  EXPECT_DOUBLE_EQ(r.mean, 0.5);
  EXPECT_DOUBLE_EQ(r.gap_ab, 0.125);
  const MomentsReport z =
      Moments(ParamVector::Constant(4, 0.4), ParamVector::Constant(4, 0), 3);
  EXPECT_EQ(z.mean, 0);
  EXPECT_EQ(z.var_a, 0);
  EXPECT_EQ(z.var_b, 0);
  EXPECT_EQ(z.gap_ab, 0);
}

TEST(Moments, MatchMonteCarlo) {
  Rng rng(19);
  const int n = 64;
  const double k = 4;
  const ParamVector x = RandomParams(n, rng), y = RandomParams(n, rng);
  const MomentsReport r = Moments(x, y, k);
  const int rounds = 1000000;
  double sa = 0, sa2 = 0, sb = 0, sb2 = 0, sg = 0, sg2 = 0;
  const ParamVector xk = x.Scaled(k), yk = y.Scaled(k);
  for (int t = 0; t < rounds; ++t) {
    const BitVector i = Draw(xk, rng), j = Draw(yk, rng);
    const double va = x.Dot(j) / n, vb = y.Dot(i) / n;
    sa += va;
    sa2 += va * va;
    sb += vb;
    sb2 += vb * vb;
    sg += (va - vb) * (va - vb);
    sg2 += std::pow(va - vb, 4);
  }
  const double ma = sa / rounds, mb = sb / rounds, mg = sg / rounds;
  const double va = sa2 / rounds - ma * ma, vb = sb2 / rounds - mb * mb;
  EXPECT_NEAR(ma, r.mean, 3 * std::sqrt(va / rounds));
  EXPECT_NEAR(mb, r.mean, 3 * std::sqrt(vb / rounds));
  EXPECT_NEAR(mg, r.gap_ab, 3 * std::sqrt((sg2 / rounds - mg * mg) / rounds));
  EXPECT_NEAR(va, r.var_a, 0.02 * r.var_a);
  EXPECT_NEAR(vb, r.var_b, 0.02 * r.var_b);
}

TEST(Moments, GapIsBoundedBy2OverNK) {
  Rng rng(20);
  for (int t = 0; t < 50; ++t) {
    const int n = 16;
    const double k = 2 + t % 5;
    const MomentsReport r = Moments(RandomParams(n, rng), RandomParams(n, rng), k);
    EXPECT_LE(r.gap_ab, 2 / (n * k) + 1e-15);
  }
}

}  // namespace
}  // namespace deeprandom
