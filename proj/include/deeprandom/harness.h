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


#ifndef DEEPRANDOM_HARNESS_H_
#define DEEPRANDOM_HARNESS_H_

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "deeprandom/adversary.h"
#include "deeprandom/drg.h"
#include "deeprandom/protocol.h"

namespace deeprandom {

struct CampaignConfig {
  SessionConfig session;
  DrgConfig drg;
  // Elected distributions shared by both partners' pools.
  int pool_size = 4;
  // Sequences combined per election.
  int sequences = 2;
  // Steps per sequence; 0 runs to maturity.
  int64_t drg_steps = 0;
  bool parallel = true;
  IrpaConfig irpa;
  // Adds the sanity controls (random guess, colluder, full-knowledge Bayes).
  bool controls = true;
  // Comma separated suite names; empty selects the standard suite.
  std::string suite;
};

// Parses flat "key = value" text; unknown keys are rejected.
CampaignConfig ParseCampaignConfig(const std::string& text);
std::string CampaignConfigToText(const CampaignConfig& cfg);
// Copies session-level fields (n, k, alpha, seed) into the DRG settings.
void SyncDrgConfig(CampaignConfig* cfg);

struct RateEstimate {
  double value = 0;
  double se = 0;
};

struct AdversaryStats {
  std::string name;
  bool control = false;
  int64_t kept = 0;
  // P(e_A != e_xi | kept).
  RateEstimate error;
  // 2 (max(q, 1 - q) - 1/2) with q = P(e_A = e_xi | kept).
  RateEstimate knowledge;
  // P(e_A != e_xi | kept) - P(e_A != e_B | kept), paired.
  RateEstimate advantage;
  double digit_error = 0;
  std::array<double, 4> digit_error_by_situation{};
};

struct SituationStats {
  int64_t blocks = 0;
  double digit_error_ab = 0;
  // Block error of B among kept blocks in this situation.
  double block_error_ab = 0;
  int64_t kept = 0;
};

struct IrpaSummary {
  bool ran = false;
  std::string failure;
  int64_t input_bits = 0;
  int64_t leaked = 0;
  int64_t output_bits = 0;
  bool final_equal = false;
};

struct StatsReport {
  int64_t blocks = 0;
  int64_t kept = 0;
  int64_t aborted = 0;
  // P(e_A != e_B | kept).
  RateEstimate error_ab;
  // 2 min(p, 1 - p).
  RateEstimate eps;
  // Worst knowledge rate over the non-control adversaries.
  RateEstimate eps_prime;
  std::string worst_adversary;
  double reliability = 0;
  RateEstimate discard_rate;
  double abort_rate = 0;
  std::array<SituationStats, 4> per_situation{};
  std::vector<AdversaryStats> adversaries;
  std::map<std::string, int64_t> psi_paths;
  IrpaSummary irpa;
  std::vector<std::string> warnings;
  std::vector<std::string> library_skipped;
  int interactivity = 3;
  CampaignConfig config;
};

// Public adversary built from a strategy, evaluated over the four pair
// combinations.
class StrategyAdversary : public Adversary {
 public:
  explicit StrategyAdversary(Strategy s, std::string name = "")
      : strategy_(std::move(s)), name_(std::move(name)) {}
  std::string name() const override {
    return name_.empty() ? strategy_.name() : name_;
  }
  double Estimate(const PublicView& view, Rng& rng) const override;
  const Strategy& strategy() const { return strategy_; }

 private:
  Strategy strategy_;
  std::string name_;
};

class RandomGuessAdversary : public Adversary {
 public:
  std::string name() const override { return "random-guess"; }
  double Estimate(const PublicView& view, Rng& rng) const override;
};

// Sanity ceiling: sees y and B's choice, so it recomputes V_B.
class ColluderAdversary : public Adversary {
 public:
  std::string name() const override { return "colluder"; }
  double Estimate(const PublicView& view, Rng& rng) const override;
  bool privileged() const override { return true; }
  double EstimatePrivileged(const PublicView& view, const PrivateContext& ctx,
                            Rng& rng) const override;
};

// Negative control: knows both distributions, hence both tidying maps.
class FullKnowledgeBayesAdversary : public Adversary {
 public:
  explicit FullKnowledgeBayesAdversary(double k) : k_(k) {}
  std::string name() const override { return "bayes-full-knowledge"; }
  double Estimate(const PublicView& view, Rng& rng) const override;
  bool privileged() const override { return true; }
  double EstimatePrivileged(const PublicView& view, const PrivateContext& ctx,
                            Rng& rng) const override;

 private:
  double k_;
};

// Everything public about the generator: the seed library and a shadow
// election run by the eavesdropper with its own randomness.
struct PublicKnowledge {
  std::shared_ptr<SeedLibrary> library;
  std::vector<Dist> shadow_pool;
};

std::vector<std::string> StandardSuiteNames();
std::shared_ptr<Adversary> MakeAdversary(const std::string& name, int n, double k,
                                         const PublicKnowledge& pub);
std::vector<std::shared_ptr<Adversary>> MakeSuite(const CampaignConfig& cfg,
                                                  const PublicKnowledge& pub);

// Runs `sequences` generators to maturity (or drg_steps) and elects.
Dist ElectOne(const CampaignConfig& cfg, const SeedLibrary& library,
              uint64_t seed);

struct CampaignSetup {
  std::shared_ptr<SeedLibrary> library;
  std::vector<TidiedDist> pool;
  PublicKnowledge knowledge;
};

CampaignSetup PrepareCampaign(const CampaignConfig& cfg);

// Full pipeline: election, blocks, digits, distillation, reconciliation.
// When `log` is set, it receives the transcript records.
StatsReport MonteCarlo(const CampaignConfig& cfg,
                       std::vector<std::string>* log = nullptr);
StatsReport MonteCarloWith(const CampaignConfig& cfg, const CampaignSetup& setup,
                           const std::vector<std::shared_ptr<Adversary>>& suite,
                           std::vector<std::string>* log = nullptr);

std::string ReportToJson(const StatsReport& r);
std::string ReportToCsv(const StatsReport& r);

struct ReplayResult {
  int64_t blocks = 0;
  // Per block: e_xi or kDiscard for discarded/aborted blocks.
  std::vector<int> e_xi;
};

// Attack path: replays a public transcript against one adversary.
ReplayResult ReplayAttack(const ReplayLog& log, const Adversary& adv);
// Knowledge rate of replayed decisions given the private block outcomes
// (e_a per block, kDiscard when not kept).
RateEstimate KnowledgeFromReplay(const ReplayResult& r,
                                 const std::vector<int>& e_a_kept);
// e_a of kept blocks from a full (private) transcript.
std::vector<int> KeptTruthFromLog(const std::string& text);

// Verification registry.
enum class CheckStatus { kPass, kFail, kReportOnly };
const char* CheckStatusName(CheckStatus s);

struct CheckResult {
  std::string id;
  CheckStatus status = CheckStatus::kFail;
  std::vector<double> measured;
  std::vector<double> bound;
  std::string detail;
};

struct CheckParams {
  int n = 6;
  double alpha = 0.001;
  uint64_t seed = 1;
  int64_t trials = 20000;
  // Used by prop12 only; <= 0 checks the default grid.
  double delta = 0;
  // Random pairs for the pair based checks.
  int pairs = 10;
};

std::vector<std::string> CheckIds();
CheckResult Verify(const std::string& id, const CheckParams& params);

// Random zeta(alpha) distribution with a small support.
Dist RandomZetaDist(int n, double alpha, Rng& rng, int support = 3);

}  // namespace deeprandom

#endif  // DEEPRANDOM_HARNESS_H_
