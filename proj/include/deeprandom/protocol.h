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


#ifndef DEEPRANDOM_PROTOCOL_H_
#define DEEPRANDOM_PROTOCOL_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "deeprandom/adversary.h"
#include "deeprandom/bernoulli.h"
#include "deeprandom/distribution.h"
#include "deeprandom/permutation.h"
#include "deeprandom/rng.h"

namespace deeprandom {

struct SessionConfig {
  double alpha = 0.001;
  int n = 16;
  double k = 4;
  int L = 16;
  double K = 2;
  // Zero selects the default.
  double gamma = 0;
  double t = 0;
  int64_t trials = 100;
  uint64_t seed = 1;
  int psi_retries = 64;
};

double DefaultGamma(int n);
double DefaultT(int n, double k, double gamma);
// Fills defaults and validates. Returns warnings.
std::vector<std::string> ResolveSessionConfig(SessionConfig* cfg);

enum class Situation { kS0 = 0, kS1 = 1, kS2 = 2, kS3 = 3 };
const char* SituationName(Situation s);

// Everything an eavesdropper sees for one round.
struct PublicView {
  BitVector i;
  BitVector j;
  PermPair pair_a;
  PermPair pair_b;
};

struct Transcript {
  // private
  ParamVector x;
  ParamVector y;
  int b = 0;
  int b2 = 0;
  Permutation sigma_a;
  Permutation sigma_b;
  Situation situation = Situation::kS0;
  double v_a = 0;
  double v_b = 0;
  // public
  BitVector i;
  BitVector j;
  PermPair pair_a;
  PermPair pair_b;

  PublicView Public() const { return {i, j, pair_a, pair_b}; }
};

// A distribution together with its tidying permutation.
struct TidiedDist {
  Dist dist;
  Permutation tidy;

  static TidiedDist Of(const Dist& d, const SearchOptions& opt = {});
};

struct RoundDraw {
  ParamVector x;
  ParamVector y;
  BitVector i;
  BitVector j;
};

RoundDraw DrawRound(const Dist& phi, const Dist& phi2, double k, Rng& rng);

// Mass of psi on |x| in [k|i| - sqrt(n), k|i| + sqrt(n)].
double PsiBandMass(const Dist& psi, const BitVector& i, double k);
bool PsiCompatible(const Dist& psi, const BitVector& i, double k);
// Raises the band mass to the required level; kDispersionConstraint when the
// support has no point in the band.
Dist ReweightPsiToBand(const Dist& psi, const BitVector& i, double k);

struct PsiPick {
  TidiedDist psi;
  // "direct", "repick" or "reweight".
  std::string path;
  int attempts = 0;
};

PsiPick SelectPsi(const std::vector<TidiedDist>& pool, const BitVector& i,
                  double k, int retries, Rng& rng);

// argmax over sigma of sum_x psi~(x) Chi(sigma . i, x / k), where psi~ is the
// tidied psi. Ties go to the lexicographically smallest sigma.
Permutation DispersionSigmaD(const BitVector& i, const TidiedDist& psi,
                             double k, SearchMode mode = SearchMode::kAuto);

struct Dispersion {
  PermPair pair_a;
  PermPair pair_b;
  int b = 0;
  int b2 = 0;
  Permutation sigma_d;
  Permutation sigma_d2;
};

// pair = (sigma_d, sigma_phi) when the bit is 0, swapped when it is 1.
Dispersion Disperse(const BitVector& i, const BitVector& j,
                    const TidiedDist& phi, const TidiedDist& phi2,
                    const TidiedDist& psi, const TidiedDist& psi2, double k,
                    Rng& rng);

// choice_a picks sigma_A from pair_b, choice_b picks sigma_B from pair_a.
Transcript FinishRound(const RoundDraw& draw, const TidiedDist& phi,
                       const TidiedDist& phi2, const Dispersion& disp,
                       int choice_a, int choice_b);

// Steps 1 to 5 for one round, tidying everything from scratch.
Transcript RunRound(const SessionConfig& cfg, const Dist& phi, const Dist& phi2,
                    const Dist& psi, const Dist& psi2, Rng& rng);

// floor((v + offset) sqrt(nk) / K) mod 2.
int SampleDigit(double v, const SessionConfig& cfg, double offset = 0);
double CellWidth(const SessionConfig& cfg);

inline constexpr int kDiscard = -1;

// Weight of the code word for digit e.
int CodeWeight(int e, const SessionConfig& cfg);
// stream_a XOR v_A where v_A is uniform among words of weight CodeWeight(e).
BitVector DistillEncode(const BitVector& stream_a, int e,
                        const SessionConfig& cfg, Rng& rng);
// 0, 1 or kDiscard.
int DistillDecode(const BitVector& stream_b, const BitVector& published,
                  const SessionConfig& cfg);
// Eavesdropper decoding: majority of published XOR stream.
int MajorityDecode(const BitVector& stream, const BitVector& published);

struct IrpaConfig {
  int margin = 32;
  int passes = 8;
  int first_block = 8;
  double max_error = 0.15;
  int check_parities = 20;
};

struct IrpaResult {
  std::vector<uint8_t> final_a;
  std::vector<uint8_t> final_b;
  int64_t leaked = 0;
  int64_t corrected = 0;
};

// Block-parity reconciliation then a public random-matrix hash.
IrpaResult IrpaSimplified(const std::vector<uint8_t>& key_a,
                          const std::vector<uint8_t>& key_b,
                          const IrpaConfig& cfg, Rng& rng);

// Privileged data handed only to sanity-control adversaries.
struct PrivateContext {
  const Transcript* round = nullptr;
  const TidiedDist* phi = nullptr;
  const TidiedDist* phi2 = nullptr;
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string name() const = 0;
  // Estimate of V_A from public data.
  virtual double Estimate(const PublicView& view, Rng& rng) const = 0;
  virtual bool privileged() const { return false; }
  virtual double EstimatePrivileged(const PublicView& view,
                                    const PrivateContext& ctx, Rng& rng) const {
    (void)ctx;
    return Estimate(view, rng);
  }
};

struct BlockOutcome {
  bool aborted = false;
  std::string abort_reason;
  std::string psi_path_a;
  std::string psi_path_b;
  Situation situation = Situation::kS0;
  int e_a = 0;
  int decode_b = kDiscard;
  int64_t digit_errors_ab = 0;
  std::vector<int> e_xi;
  std::vector<int64_t> digit_errors_axi;
  double offset = 0;
};

// One L-round block; the dispersion pairs and partner choices stay fixed.
// When `log` is set, appends one JSON record per block and per round.
BlockOutcome RunBlock(const SessionConfig& cfg, const TidiedDist& phi,
                      const TidiedDist& phi2,
                      const std::vector<TidiedDist>& psi_pool,
                      const std::vector<std::shared_ptr<Adversary>>& adversaries,
                      int64_t block_index, Rng& rng,
                      std::vector<std::string>* log = nullptr);

// Fields of a log record visible to an eavesdropper.
bool IsPublicField(const std::string& field);
std::string SessionHeader(const SessionConfig& cfg);
// Drops private fields from one log record.
std::string PublicProjection(const std::string& record);

struct ReplayBlock {
  int64_t index = 0;
  bool aborted = false;
  bool discarded = false;
  double offset = 0;
  BitVector published;
  std::vector<PublicView> rounds;
};

struct ReplayLog {
  SessionConfig cfg;
  std::vector<ReplayBlock> blocks;
};

ReplayLog ParsePublicLog(const std::string& text);

// Eavesdropper digit for one round.
int AdversaryDigit(const Adversary& adv, const PublicView& view,
                   const SessionConfig& cfg, double offset, Rng& rng);

}  // namespace deeprandom

#endif  // DEEPRANDOM_PROTOCOL_H_
