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
#include <type_traits>

#include "deeprandom/drg.h"
#include "deeprandom/error.h"
#include "deeprandom/harness.h"
#include "deeprandom/protocol.h"
#include "json.hpp"

namespace deeprandom {
namespace {

SessionConfig Cfg(int n, double k) {
  SessionConfig c;
  c.n = n;
  c.k = k;
  c.L = 16;
  c.K = 2;
  c.gamma = 0.25;
  c.t = 0.0625;
  return c;
}

BitVector RandomBits(int n, double p, Rng& rng) {
  BitVector b(n);
  for (int s = 0; s < n; ++s) b.Set(s, rng.Bernoulli(p));
  return b;
}

// Favorable-case transcript: both partners pick the true tidying maps.
Transcript S0Round(const TidiedDist& phi, const TidiedDist& phi2, double k, Rng& rng) {
  const RoundDraw draw = DrawRound(phi.dist, phi2.dist, k, rng);
  Dispersion d;
  const int n = phi.dist.n();
  d.b = 0;
  d.b2 = 0;
  d.pair_a = {Permutation::Random(n, rng), phi.tidy};
  d.pair_b = {Permutation::Random(n, rng), phi2.tidy};
  return FinishRound(draw, phi, phi2, d, 1, 1);
}

TEST(Config, DefaultsAndValidation) {
  SessionConfig c;
  c.n = 1024;
  c.k = 4;
  const auto warnings = ResolveSessionConfig(&c);
  EXPECT_NEAR(c.gamma, 1 / (2 * std::log(1024.0)), 1e-15);
  EXPECT_NEAR(c.t, std::max(16.0 / 1024, c.gamma / 4), 1e-15);
  EXPECT_FALSE(warnings.empty());  // K = 2 is not << sqrt(4)
  SessionConfig bad;
  bad.n = 8;
  try {
    ResolveSessionConfig(&bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
    EXPECT_NE(std::string(e.what()).find("gamma"), std::string::npos);
  }
}

TEST(PublicView, CarriesOnlyPublishedFields) {
  static_assert(std::is_same_v<decltype(PublicView::i), BitVector>);
  static_assert(std::is_same_v<decltype(PublicView::pair_a), PermPair>);
  // i, j and two pairs of two permutations; nothing else fits.
  static_assert(sizeof(PublicView) == 2 * sizeof(BitVector) + 2 * sizeof(PermPair));
  for (const char* f : {"i", "j", "pair_a", "pair_b", "published", "offset"}) {
    EXPECT_TRUE(IsPublicField(f)) << f;
  }
  for (const char* f : {"x", "y", "b", "b2", "choice_a", "v_a", "v_b", "e_a", "situation"}) {
    EXPECT_FALSE(IsPublicField(f)) << f;
  }
  const std::string rec = R"({"type":"round","i":"0101","x":"1111","v_a":0.5})";
  const auto j = nlohmann::json::parse(PublicProjection(rec));
  EXPECT_TRUE(j.contains("i"));
  EXPECT_FALSE(j.contains("x"));
  EXPECT_FALSE(j.contains("v_a"));
}

TEST(RunRound, HugeDegradationSilencesDraws) {
  SessionConfig c = Cfg(8, 1e6);
  Rng rng(1);
  const Dist phi = RandomZetaDist(8, 0.001, rng), phi2 = RandomZetaDist(8, 0.001, rng);
  for (int t = 0; t < 20; ++t) {
    try {
      const Transcript tr = RunRound(c, phi, phi2, phi, phi2, rng);
      EXPECT_EQ(tr.i.Weight(), 0);
      EXPECT_EQ(tr.j.Weight(), 0);
      EXPECT_EQ(tr.v_a, 0);
      EXPECT_EQ(tr.v_b, 0);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDispersionConstraint);
    }
  }
}

TEST(RunRound, SituationsAreEquallyLikely) {
  SessionConfig c = Cfg(8, 2);
  Rng rng(2);
  const Dist phi = RandomZetaDist(8, 0.001, rng), phi2 = RandomZetaDist(8, 0.001, rng);
  const TidiedDist a = TidiedDist::Of(phi), b = TidiedDist::Of(phi2);
  std::array<int, 4> counts{};
  const int rounds = 10000;
  for (int t = 0; t < rounds; ++t) {
    const RoundDraw draw = DrawRound(phi, phi2, c.k, rng);
    const Dispersion d = Disperse(draw.i, draw.j, a, b, a, b, c.k, rng);
    const int ca = static_cast<int>(rng.Below(2)), cb = static_cast<int>(rng.Below(2));
    ++counts[static_cast<int>(FinishRound(draw, a, b, d, ca, cb).situation)];
  }
  double chi2 = 0;
  for (int u = 0; u < 4; ++u) chi2 += std::pow(counts[u] - rounds / 4.0, 2) / (rounds / 4.0);
  EXPECT_LT(chi2, 16.27);  // 3 dof, p ~ 0.001
}

TEST(FavorableCase, PartnerGapAndEqualMeans) {
  const int n = 128;
  const double k = 4;
  Rng rng(3);
  const TidiedDist a = TidiedDist::Of(Dist::Dirac(RandomBits(n, 0.6, rng)));
  const TidiedDist b = TidiedDist::Of(Dist::Dirac(RandomBits(n, 0.6, rng)));
  const int rounds = 100000;
  double sg = 0, sg2 = 0, sd = 0, sd2 = 0;
  for (int t = 0; t < rounds; ++t) {
    const Transcript tr = S0Round(a, b, k, rng);
    ASSERT_EQ(tr.situation, Situation::kS0);
    const double d = tr.v_a - tr.v_b;
    sg += d * d;
    sg2 += d * d * d * d;
    sd += d;
    sd2 += d * d;
  }
  const double gap = sg / rounds;
  const double gap_se = std::sqrt((sg2 / rounds - gap * gap) / rounds);
  EXPECT_LE(gap - 2.576 * gap_se, 2 / (n * k));
  const double mean = sd / rounds;
  EXPECT_NEAR(mean, 0, 2.576 * std::sqrt((sd2 / rounds - mean * mean) / rounds));
}

TEST(FavorableCase, DrawsFactorizeGivenTheSecrets) {
  const int n = 8;
  const double k = 2;
  Rng rng(4);
  const Dist phi = Dist::Dirac(BitVector::FromString("11110110"));
  const Dist phi2 = Dist::Dirac(BitVector::FromString("01111101"));
  std::array<std::array<double, 9>, 9> table{};
  const int draws = 50000;
  for (int t = 0; t < draws; ++t) {
    const RoundDraw d = DrawRound(phi, phi2, k, rng);
    table[d.i.Weight()][d.j.Weight()] += 1;
  }
  std::array<double, 9> row{}, col{};
  for (int u = 0; u < 9; ++u) {
    for (int v = 0; v < 9; ++v) {
      row[u] += table[u][v];
      col[v] += table[u][v];
    }
  }
  double chi2 = 0;
  int cells = 0;
  for (int u = 0; u < 9; ++u) {
    for (int v = 0; v < 9; ++v) {
      const double e = row[u] * col[v] / draws;
      if (e < 5) continue;
      chi2 += std::pow(table[u][v] - e, 2) / e;
      ++cells;
    }
  }
  // 6 x 6 populated cells leave 25 dof; 52.6 is p ~ 0.001.
  EXPECT_LT(chi2, 52.6) << cells;
}

double ScoreOracle(const BitVector& i, const TidiedDist& psi, double k, const Permutation& s) {
  const Dist t = psi.dist.Permuted(psi.tidy);
  double total = 0;
  for (const auto& p : t.points()) {
    total += p.weight * Chi(s.Apply(i), ParamVector::FromBits(p.x).Scaled(k));
  }
  return total;
}

TEST(Dispersion, EmptyDrawAndExhaustiveArgmax) {
  Rng rng(5);
  const TidiedDist psi = TidiedDist::Of(Dist::Dirac(BitVector::FromString("101101")));
  EXPECT_TRUE(DispersionSigmaD(BitVector(6), psi, 2).IsIdentity());
  for (int t = 0; t < 10; ++t) {
    const BitVector i = RandomBits(6, 0.4, rng);
    const Permutation got = DispersionSigmaD(i, psi, 2, SearchMode::kExact);
    std::vector<int> m(6);
    std::iota(m.begin(), m.end(), 0);
    double best = -1;
    std::vector<int> arg;
    do {
      const double v = ScoreOracle(i, psi, 2, Permutation(m));
      if (v > best + 1e-12) {
        best = v;
        arg = m;
      }
    } while (std::next_permutation(m.begin(), m.end()));
    EXPECT_EQ(got.map(), arg) << i.ToString();
  }
}

TEST(Dispersion, ObserverCannotTellTheTruePermutation) {
  // Classifier: the pair element that moves fewer points is the true map.
  const int n = 8;
  const double k = 2;
  Rng rng(6);
  DrgConfig dc;
  dc.n = n;
  dc.k = 4;
  dc.alpha = 0.001;
  dc.dim_omega = 4;
  const SeedLibrary lib = SeedLibrary::Default(n, 4, 0.001, 1);
  std::vector<DrgSequence> seqs;
  for (int q = 0; q < 2; ++q) {
    seqs.emplace_back(dc, lib.entries()[q].dist, 30 + q);
    for (int64_t t = 0; t < MaturityFor(dc); ++t) seqs.back().Step(lib);
  }
  std::vector<TidiedDist> pool;
  for (int t = 0; t < 6; ++t) {
    pool.push_back(TidiedDist::Of(Elect({&seqs[0], &seqs[1]}, dc, rng)));
  }
  int right = 0, total = 0;
  for (int t = 0; t < 4000; ++t) {
    const TidiedDist& phi = pool[rng.Below(pool.size())];
    const TidiedDist& phi2 = pool[rng.Below(pool.size())];
    const TidiedDist& psi = pool[rng.Below(pool.size())];
    const RoundDraw draw = DrawRound(phi.dist, phi2.dist, k, rng);
    Dispersion d;
    try {
      d = Disperse(draw.i, draw.j, phi, phi2, psi, psi, k, rng);
    } catch (const Error&) {
      continue;
    }
    const int s0 = d.pair_a[0].SupportSize(), s1 = d.pair_a[1].SupportSize();
    if (s0 == s1) continue;
    const int guess = s0 < s1 ? 0 : 1;
    right += guess == (d.b == 0 ? 1 : 0);
    ++total;
  }
  ASSERT_GT(total, 500);
  const double p = static_cast<double>(right) / total;
  EXPECT_NEAR(p, 0.5, 2.576 * std::sqrt(0.25 / total)) << total;
}

TEST(PsiBand, ReweightAndSelect) {
  const int n = 16;
  const double k = 2;
  const BitVector i = BitVector::Leading(n, 3);  // band |x| in [2, 10]
  const Dist psi(n, {{BitVector::Leading(n, 6), 0.01}, {BitVector::Leading(n, 15), 0.99}});
  EXPECT_FALSE(PsiCompatible(psi, i, k));
  const Dist fixed = ReweightPsiToBand(psi, i, k);
  EXPECT_GE(PsiBandMass(fixed, i, k), 1 / (2 * std::sqrt(16.0)) - 1e-12);
  const Dist far = Dist::Dirac(BitVector::Leading(n, 15));
  try {
    ReweightPsiToBand(far, i, k);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDispersionConstraint);
  }
  Rng rng(7);
  const PsiPick direct = SelectPsi({TidiedDist::Of(fixed)}, i, k, 4, rng);
  EXPECT_EQ(direct.path, "direct");
  const PsiPick rew = SelectPsi({TidiedDist::Of(psi)}, i, k, 4, rng);
  EXPECT_EQ(rew.path, "reweight");
  EXPECT_TRUE(PsiCompatible(rew.psi.dist, i, k));
}

TEST(Digits, CellsAndOffsets) {
  SessionConfig c = Cfg(128, 4);
  c.K = 8;
  const double w = CellWidth(c);
  EXPECT_NEAR(w, 8 / std::sqrt(512.0), 1e-15);
  EXPECT_EQ(SampleDigit(0, c), 0);
  EXPECT_EQ(SampleDigit(w, c), 1);
  EXPECT_EQ(SampleDigit(2 * w + 1e-9, c), 0);
  EXPECT_EQ(SampleDigit(0, c, w), 1);
}

TEST(Digits, FavorableCaseMismatchAgainstTailBound) {
  // The claimed bound 2n exp(-K^2 / 2) on digit disagreement in the
  // favorable case, measured directly.
  const int n = 128;
  const double k = 4;
  SessionConfig c = Cfg(n, k);
  c.K = 8;
  Rng rng(8);
  const TidiedDist a = TidiedDist::Of(Dist::Dirac(RandomBits(n, 0.6, rng)));
  const TidiedDist b = TidiedDist::Of(Dist::Dirac(RandomBits(n, 0.6, rng)));
  const int rounds = 20000;
  int mismatch = 0;
  for (int t = 0; t < rounds; ++t) {
    const Transcript tr = S0Round(a, b, k, rng);
    const double offset = rng.Uniform() * CellWidth(c);
    mismatch += SampleDigit(tr.v_a, c, offset) != SampleDigit(tr.v_b, c, offset);
  }
  const double bound = 2 * n * std::exp(-c.K * c.K / 2);
  const double p = static_cast<double>(mismatch) / rounds;
  EXPECT_LE(p - 2.576 * std::sqrt(p * (1 - p) / rounds), bound) << "mismatch rate " << p;
}

TEST(Distill, EncodeDecode) {
  SessionConfig c = Cfg(16, 4);
  c.L = 32;
  Rng rng(9);
  const BitVector stream = RandomBits(32, 0.5, rng);
  c.gamma = 0.5;
  c.t = 0.1;
  EXPECT_EQ((DistillEncode(stream, 1, c, rng) ^ stream).Weight(), 32);
  c.gamma = 0.25;
  for (int t = 0; t < 10000; ++t) {
    const int e = t & 1;
    const BitVector pub = DistillEncode(stream, e, c, rng);
    ASSERT_EQ((pub ^ stream).Weight(), e ? 24 : 8);
    ASSERT_EQ(DistillDecode(stream, pub, c), e);
  }
  EXPECT_EQ(CodeWeight(1, c), 24);
  EXPECT_EQ(CodeWeight(0, c), 8);
  // |v_B| = L/2 sits in the dead zone.
  const BitVector half = BitVector::Leading(32, 16);
  EXPECT_EQ(DistillDecode(half, BitVector(32), c), kDiscard);
  EXPECT_EQ(MajorityDecode(BitVector::Leading(32, 20), BitVector(32)), 1);
}

TEST(Distill, PublishedWordHidesTheDigit) {
  SessionConfig c = Cfg(16, 4);
  c.L = 16;
  Rng rng(10);
  std::array<std::array<double, 17>, 2> hist{};
  const int draws = 40000;
  for (int t = 0; t < draws; ++t) {
    const int e = t & 1;
    hist[e][DistillEncode(RandomBits(16, 0.5, rng), e, c, rng).Weight()] += 1;
  }
  // Plug-in mutual information between e and the published weight.
  double mi = 0;
  for (int w = 0; w <= 16; ++w) {
    const double pw = (hist[0][w] + hist[1][w]) / draws;
    for (int e = 0; e < 2; ++e) {
      const double pj = hist[e][w] / draws;
      if (pj > 0) mi += pj * std::log2(pj / (0.5 * pw));
    }
  }
  // Bias of the plug-in estimator is about (cells - 1) / (2 N ln 2).
  EXPECT_LT(mi, 5 * 16 / (2.0 * draws * std::log(2.0)));
}

std::vector<uint8_t> Bits(int len, Rng& rng) {
  std::vector<uint8_t> v(len);
  for (auto& b : v) b = static_cast<uint8_t>(rng.Below(2));
  return v;
}

TEST(Irpa, IdenticalInputs) {
  Rng rng(11);
  const auto a = Bits(1024, rng);
  IrpaConfig cfg;
  const IrpaResult r = IrpaSimplified(a, a, cfg, rng);
  EXPECT_EQ(r.final_a, r.final_b);
  EXPECT_EQ(r.corrected, 0);
  EXPECT_GT(r.leaked, 0);
  EXPECT_EQ(static_cast<int64_t>(r.final_a.size()), 1024 - r.leaked - cfg.margin);
}

TEST(Irpa, OnePercentNoise) {
  Rng rng(12);
  IrpaConfig cfg;
  int equal = 0;
  const int runs = 200;
  for (int t = 0; t < runs; ++t) {
    const auto a = Bits(1024, rng);
    auto b = a;
    for (auto& bit : b) {
      if (rng.Bernoulli(0.01)) bit ^= 1;
    }
    try {
      const IrpaResult r = IrpaSimplified(a, b, cfg, rng);
      ASSERT_EQ(static_cast<int64_t>(r.final_a.size()), 1024 - r.leaked - cfg.margin);
      equal += r.final_a == r.final_b;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kReconciliationFailed);
    }
  }
  EXPECT_GE(equal, 0.99 * runs);
}

TEST(Irpa, TooNoisyFails) {
  Rng rng(13);
  const auto a = Bits(512, rng), b = Bits(512, rng);
  try {
    IrpaSimplified(a, b, IrpaConfig{}, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kReconciliationFailed);
  }
}

}  // namespace
}  // namespace deeprandom
