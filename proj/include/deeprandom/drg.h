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

#ifndef DEEPRANDOM_DRG_H_
#define DEEPRANDOM_DRG_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "deeprandom/adversary.h"
#include "deeprandom/distribution.h"
#include "deeprandom/permutation.h"
#include "deeprandom/rng.h"
#include "deeprandom/sleeking.h"

namespace deeprandom {

using StepCounter = boost::multiprecision::cpp_int;

enum class DrgVariant { kCombined, kProcess1, kProcess2 };

const char* DrgVariantName(DrgVariant v);
DrgVariant ParseDrgVariant(const std::string& name);

struct DrgConfig {
  int n = 8;
  double k = 4;
  double alpha = 0.001;
  DrgVariant variant = DrgVariant::kCombined;
  // Library candidates scored per step for each of Psi and Psi'.
  int candidates = 4;
  // Target payoff as a multiple of the mean over random relabelings.
  double threshold_factor = 1.5;
  // Mix every new value with the uniform distribution at weight 1/2.
  bool regularize = false;
  // Always take the best library entry, identity relabeling, weight 1/2.
  bool deterministic = false;
  size_t max_support = 64;
  int mixture_retries = 8;
  // Maturity: smallest N with N / ln N >= c_prime * dim_omega.
  double c_prime = 1.0;
  int64_t dim_omega = 0;  // 0 selects the table dimension
  double eps_prime = kDefaultEpsPrime;
  int sleek_budget = kDefaultSleekBudget;
  int election_retries = 16;
  SearchOptions search;
};

// Number of feasible (|i|, |j|, i.j) triples for dimension n.
int64_t TableDimension(int n);
// Smallest N >= 3 with N / ln N >= c_prime * dim.
int64_t Maturity(int64_t dim, double c_prime);
int64_t MaturityFor(const DrgConfig& cfg);

// Payoff-minimizing strategy over the (|i|, |j|, i.j) table against phi.
Strategy MinStrategy(const Dist& phi, double k);

struct DefeatResult {
  Permutation sigma;
  double payoff = 0;
  // How the permutation was found: invariant, climb, restart, exhaustive.
  std::string method;
};

// A relabeling sigma with <omega, psi o sigma> >= threshold.
DefeatResult DefeatingPermutation(const Strategy& omega, const Dist& psi,
                                  double threshold, const SearchOptions& opt,
                                  Rng& rng);

// Named distributions in zeta(alpha).
class SeedLibrary {
 public:
  struct Entry {
    std::string name;
    Dist dist;
    TripleStats stats;      // self statistics, invariant under relabeling
    Permutation tidy;       // tidying permutation
  };

  SeedLibrary(int n, double k, double alpha) : n_(n), k_(k), alpha_(alpha) {}
  // Standard seeds: Dirac points at several weights, the block-sum seed and
  // block mixtures. Entries outside zeta(alpha) are skipped.
  static SeedLibrary Default(int n, double k, double alpha, uint64_t seed,
                             size_t max_support = 64,
                             const SearchOptions& opt = {});

  // Throws kPrecondition when dist is not in zeta(alpha).
  void Add(const std::string& name, const Dist& dist,
           const SearchOptions& opt = {});
  const std::vector<Entry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  int n() const { return n_; }
  double alpha() const { return alpha_; }
  std::vector<std::string> skipped() const { return skipped_; }
  void NoteSkipped(const std::string& name) { skipped_.push_back(name); }

 private:
  int n_;
  double k_;
  double alpha_;
  std::vector<Entry> entries_;
  std::vector<std::string> skipped_;
};

// The block-sum seed: two independent halves, each with a uniform number of
// ones t in {0..n/2} placed uniformly. Exact for n <= 16, else `samples`
// draws.
Dist BlockSumSeed(int n, Rng* rng = nullptr, int samples = 256);

struct StepReport {
  double payoff_before = 0;   // <w_m, Phi_m>
  double payoff_after = 0;    // <w_m, Phi_{m+1}>
  double threshold = 0;
  double mix_weight = 0;
  double history_min = 0;     // minimized average payoff after the step
  std::string psi;
  std::string psi2;
  bool fallback_single = false;
};

class DrgSequence {
 public:
  DrgSequence(const DrgConfig& cfg, const Dist& initial, uint64_t seed);

  const DrgConfig& config() const { return cfg_; }
  const Dist& current() const { return current_; }
  const StepCounter& step() const { return step_; }
  const TripleStats& history() const { return history_; }
  int64_t history_count() const { return history_count_; }
  // min over table strategies of the average payoff over Phi_0..Phi_m.
  double HistoryMinPayoff() const;
  Rng& rng() { return rng_; }

  StepReport Step(const SeedLibrary& library,
                  const std::vector<const Dist*>& peers = {});

  std::string Checkpoint() const;
  static DrgSequence Restore(const std::string& json);

 private:
  DrgConfig cfg_;
  Dist current_;
  TripleStats current_stats_;
  StepCounter step_ = 0;
  TripleStats history_;
  int64_t history_count_ = 0;
  Rng rng_;
};

// Combines the current values of mature sequences with a common random
// relabeling, then applies the Lemma-3 sleeking pair.
Dist Elect(const std::vector<const DrgSequence*>& sequences,
           const DrgConfig& cfg, Rng& rng);

std::string DrgConfigToJson(const DrgConfig& cfg);
DrgConfig DrgConfigFromJson(const std::string& json);

}  // namespace deeprandom

#endif  // DEEPRANDOM_DRG_H_
