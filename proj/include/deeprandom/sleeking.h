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

#ifndef DEEPRANDOM_SLEEKING_H_
#define DEEPRANDOM_SLEEKING_H_

#include <map>
#include <vector>

#include "deeprandom/distribution.h"
#include "deeprandom/permutation.h"
#include "deeprandom/rng.h"

namespace deeprandom {

// Number of derangements of m points.
double Derangements(int m);
// Number of permutations of {0..n-1} moving exactly ell points.
double SupportClassSize(int n, int ell);

// Probability mass per support size; uniform within each size class.
class SleekKernel {
 public:
  SleekKernel() = default;
  SleekKernel(int n, const std::map<int, double>& size_weights);
  static SleekKernel Identity(int n);

  int n() const { return n_; }
  // w(ell) for ell = 0..n (w(1) is always 0).
  const std::vector<double>& weights() const { return w_; }
  double Weight(int ell) const { return w_[ell]; }
  // Mass of one permutation of support size ell.
  double PerPermutation(int ell) const;

 private:
  int n_ = 0;
  std::vector<double> w_;
};

SleekKernel DiracKernel(int n, int ell);

Permutation SampleSigma(const SleekKernel& kernel, Rng& rng);

enum class SleekMode { kExact, kSampled };

inline constexpr int kDefaultSleekBudget = 256;

// sum_sigma gamma(|sigma|) phi o sigma, exactly (n <= 7) or as a mixture of
// `budget` sampled terms.
Dist Sleek(const Dist& phi, const SleekKernel& kernel, SleekMode mode,
           Rng* rng = nullptr, int budget = kDefaultSleekBudget);

struct ComposeReport {
  // Mass of T_g1 o T_g2 aggregated by support size.
  SleekKernel kernel;
  // Per-permutation coefficient spread inside each size class.
  std::vector<double> class_spread;
  double max_class_spread = 0;
  bool uniform_within_size = true;
  // Largest spread inside a single cycle type (expected to be 0).
  double max_cycle_type_spread = 0;
};

// Exhaustive convolution over S_n (n <= 7).
ComposeReport ComposeCheck(const SleekKernel& g1, const SleekKernel& g2);
// As ComposeCheck, but fails when the result is not uniform per size class.
SleekKernel ComposeKernels(const SleekKernel& g1, const SleekKernel& g2);

struct DeltaGammaResult {
  double value = 0;
  double stderr_ = 0;
  bool exact = false;
};

// sum_sigma gamma(|sigma|) E[(x.y - x.sigma(y))^2], exact for n <= 7.
DeltaGammaResult DeltaGamma(const Dist& phi, const Dist& phi2,
                            const SleekKernel& kernel, int trials, Rng& rng);
// E[(x.y - x.sigma(y))^2] from the quadratic matrices.
double SigmaGap(const Eigen::MatrixXd& m, const Eigen::MatrixXd& m2,
                const Permutation& sigma);

// Pair of kernels (dirac at round(eps' n), border kernel at round(l0 n)).
struct Lemma3Preset {
  SleekKernel gamma;
  SleekKernel delta;
  double eps_prime = 0;
  double l0 = 0;
};

inline constexpr double kDefaultEpsPrime = 0.125;

Lemma3Preset MakeLemma3Preset(int n, double alpha,
                              double eps_prime = kDefaultEpsPrime);
Dist ApplyLemma3(const Dist& phi, const Lemma3Preset& preset, SleekMode mode,
                 Rng* rng = nullptr, int budget = kDefaultSleekBudget);

}  // namespace deeprandom

#endif  // DEEPRANDOM_SLEEKING_H_
