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

#ifndef DEEPRANDOM_DISTRIBUTION_H_
#define DEEPRANDOM_DISTRIBUTION_H_

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "deeprandom/bernoulli.h"
#include "deeprandom/permutation.h"
#include "deeprandom/rng.h"

namespace deeprandom {

struct SupportPoint {
  BitVector x;
  double weight = 0;
};

// Finite mixture of points of {0,1}^n. Duplicate points are merged and
// weights renormalized on construction.
class Dist {
 public:
  Dist() = default;
  Dist(int n, const std::vector<SupportPoint>& points);
  static Dist Dirac(const BitVector& x);
  // Every point of {0,1}^n with equal weight (n <= 20).
  static Dist Uniform(int n);
  // sum_t w_t D_t with weights renormalized.
  static Dist Mixture(const std::vector<std::pair<const Dist*, double>>& parts);

  int n() const { return n_; }
  size_t size() const { return points_.size(); }
  const std::vector<SupportPoint>& points() const { return points_; }

  // The distribution of sigma applied to x ~ this.
  Dist Permuted(const Permutation& sigma) const;
  BitVector Sample(Rng& rng) const;
  // Multinomial resampling onto at most `max_points` points.
  Dist Resampled(size_t max_points, Rng& rng) const;
  // Mass of support points with |x| in [lo, hi].
  double MassWithOnesIn(double lo, double hi) const;

  std::string Serialize() const;
  static Dist Parse(const std::string& text);

 private:
  int n_ = 0;
  std::vector<SupportPoint> points_;
  std::vector<double> cumulative_;
};

// Symmetric n x n matrix M(u, v) = E[x_u x_v].
struct QuadMatrix {
  Eigen::MatrixXd values;

  int n() const { return static_cast<int>(values.rows()); }
  bool IsSymmetric(double tol = 1e-12) const;
  bool IsPsd(double tol = 1e-9) const;
  bool EntriesInUnit(double tol = 1e-12) const;
};

QuadMatrix QuadMatrixOf(const Dist& phi);

// Average off-diagonal entry.
double OffDiagonalMean(const Eigen::MatrixXd& m);
// Zero diagonal, every off-diagonal entry equal to OffDiagonalMean(m).
Eigen::MatrixXd MBar(const Eigen::MatrixXd& m);
// Off-diagonal part of m minus its mean.
Eigen::MatrixXd Centered(const Eigen::MatrixXd& m);
// out(u, v) = m(sigma(u), sigma(v)).
Eigen::MatrixXd PermuteMatrix(const Eigen::MatrixXd& m, const Permutation& sigma);
// Sum of m(u, v) over u in set, v outside.
double CutSum(const Eigen::MatrixXd& m, const std::vector<int>& set);

enum class SearchMode { kAuto, kExact, kHeuristic };

struct SearchOptions {
  SearchMode mode = SearchMode::kAuto;
  int restarts = 32;
  uint64_t seed = 0x5eed;
  bool parallel = true;
  // Heuristic c-norm searches may stop once this value is reached.
  double stop_at = -1;
};

struct CNormResult {
  double value = 0;
  std::vector<int> witness;
  bool exact = false;
};

// max over half-size I of |(4/n^2) sum_{I x I-bar} m|.
CNormResult CNorm(const Eigen::MatrixXd& m, const SearchOptions& opt = {});
bool CNormExactFeasible(int n);
// CNorm(M - M-bar) of the quadratic matrix of phi.
CNormResult CenteredCNorm(const Dist& phi, const SearchOptions& opt = {});
bool ZetaMember(const Dist& phi, double alpha, const SearchOptions& opt = {});

// E[(|x||y|/n^2 - x.y/n)^2] for x ~ phi, y ~ phi2, by direct double sum.
double Delta0(const Dist& phi, const Dist& phi2);
// Same quantity for (phi, phi2 o sigma) from the quadratic matrices.
double Delta0FromMatrices(const Eigen::MatrixXd& m, const Eigen::MatrixXd& m2,
                          const Permutation& sigma);

struct PermGapResult {
  double value = 0;
  Permutation argmax;
  bool exact = false;
};

// max over sigma of |M . M2 - M . sigma(M2)| (Frobenius products).
PermGapResult PermGap(const Dist& phi, const Dist& phi2,
                      const SearchOptions& opt = {});
PermGapResult PermGapOfMatrices(const Eigen::MatrixXd& m,
                                const Eigen::MatrixXd& m2,
                                const SearchOptions& opt = {});

struct TidyResult {
  Permutation sigma;
  Dist tidied;
  bool exact = false;
};

// sigma minimizing the cross-block mass of the quadratic matrix of phi o sigma.
TidyResult Tidy(const Dist& phi, const SearchOptions& opt = {});
Permutation TidyingPermutation(const Eigen::MatrixXd& m,
                               const SearchOptions& opt, bool* exact = nullptr);

struct SyncResult {
  Permutation sigma;
  double achieved = 0;
  // (alpha/4 - 1/n)^2, the threshold that is checked.
  double threshold = 0;
  // alpha/4 - 1/n^2, reported alongside.
  double threshold_alt = 0;
  bool synchronized = false;
  bool exact = false;
};

SyncResult Synchronize(const Dist& phi, const Dist& phi2, double alpha,
                       const SearchOptions& opt = {});

}  // namespace deeprandom

#endif  // DEEPRANDOM_DISTRIBUTION_H_
