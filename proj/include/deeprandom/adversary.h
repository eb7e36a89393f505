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

#ifndef DEEPRANDOM_ADVERSARY_H_
#define DEEPRANDOM_ADVERSARY_H_

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>

#include "deeprandom/bernoulli.h"
#include "deeprandom/distribution.h"
#include "deeprandom/permutation.h"
#include "deeprandom/rng.h"

namespace deeprandom {

// Key of the invariant triple (|i|, |j|, i.j).
uint64_t PackTriple(int a, int b, int c);
void UnpackTriple(uint64_t key, int* a, int* b, int* c);
bool TripleFeasible(int n, int a, int b, int c);

enum class StrategyKind { kMeanMatch, kCounting, kTable, kBayes, kCustom };

const char* StrategyKindName(StrategyKind kind);

// A deterministic estimate of x.y/(nk) from the public draws (i, j).
class Strategy {
 public:
  using Function = std::function<double(const BitVector&, const BitVector&)>;
  using Table = std::unordered_map<uint64_t, double>;

  // k (i.j) / n.
  static Strategy MeanMatch(int n, double k);
  // k |i| |j| / n^2.
  static Strategy Counting(int n, double k);
  // Values on (|i|, |j|, i.j); missing triples fall back to Counting.
  static Strategy FromTable(int n, double k, Table values,
                            std::string name = "table");
  // E[x.y/(nk) | i, j] under known phi (for x) and phi2 (for y).
  static Strategy Bayes(const Dist& phi, const Dist& phi2, double k);
  static Strategy Custom(int n, double k, std::string name, Function f);

  StrategyKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  int n() const { return n_; }
  double k() const { return k_; }
  // True for strategies that only depend on (|i|, |j|, i.j).
  bool Invariant() const {
    return kind_ == StrategyKind::kMeanMatch ||
           kind_ == StrategyKind::kCounting || kind_ == StrategyKind::kTable;
  }
  const Table& table() const { return table_; }

  // Value in [0, 1].
  double Eval(const BitVector& i, const BitVector& j) const;
  // Only for Invariant() strategies.
  double EvalTriple(int a, int b, int c) const;
  // Count of Bayes evaluations that fell back to the counting value.
  int64_t fallbacks() const;

  // Rows "a b c value" for table strategies.
  std::string SerializeTable() const;
  static Strategy ParseTable(int n, double k, const std::string& text);

 private:
  struct BayesModel;

  StrategyKind kind_ = StrategyKind::kCounting;
  std::string name_;
  int n_ = 0;
  double k_ = 1;
  Table table_;
  Function fn_;
  std::shared_ptr<BayesModel> bayes_;
};

// Posterior mean of x given the degraded draw i (x ~ phi, i ~ x/k).
// Returns false when no support point is compatible with i.
bool PosteriorMean(const Dist& phi, const BitVector& i, double k,
                   std::vector<double>* mean);

// Per-triple sufficient statistics of (omega - target)^2 under the joint law.
// For each reachable triple t: A = P(t), B = E[target; t], C = E[target^2; t].
class TripleStats {
 public:
  TripleStats() = default;
  TripleStats(int n, double k) : n_(n), k_(k) {}

  int n() const { return n_; }
  double k() const { return k_; }
  const std::map<uint64_t, std::array<double, 3>>& cells() const {
    return cells_;
  }
  void AddCell(uint64_t key, double a, double b, double c);
  void Accumulate(const TripleStats& other, double scale = 1.0);
  TripleStats Scaled(double scale) const;

  // sum_t (C - B^2 / A): the smallest payoff reachable by a table strategy.
  double MinPayoff() const;
  // Table strategy with value B / A on each reachable triple.
  Strategy Minimizer(const std::string& name = "table-min") const;
  // Exact payoff of an invariant strategy.
  double PayoffOf(const Strategy& omega) const;
  double TotalMass() const;

 private:
  int n_ = 0;
  double k_ = 1;
  std::map<uint64_t, std::array<double, 3>> cells_;
};

// Exact triple statistics for x ~ phi, y ~ phi2 (binary supports).
TripleStats ComputeTripleStats(const Dist& phi, const Dist& phi2, double k);

enum class PayoffMode { kAuto, kExact, kMonteCarlo };

struct PayoffReport {
  double payoff = 0;
  double stderr_ = 0;
  int64_t trials = 0;
  bool exact = false;
};

// E[(omega(i, j) - x.y/(nk))^2].
PayoffReport Payoff(const Strategy& omega, const Dist& phi, const Dist& phi2,
                    double k, int64_t trials, Rng& rng,
                    PayoffMode mode = PayoffMode::kAuto);

// Average of omega over simultaneous relabelings of (i, j).
Strategy Symmetrize(const Strategy& omega, Rng* rng = nullptr,
                    int samples_per_triple = 64);

using PermPair = std::array<Permutation, 2>;

// Evaluation of omega on published pairs: the average of
// omega(alpha(i), beta(j)) over alpha in pair_a and beta in pair_b. The
// result does not depend on the order inside either pair.
double EvalOnPairs(const Strategy& omega, const BitVector& i, const BitVector& j,
                   const PermPair& pair_a, const PermPair& pair_b);

}  // namespace deeprandom

#endif  // DEEPRANDOM_ADVERSARY_H_
