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

#include "deeprandom/harness.h"

#include <omp.h>

#include <cmath>
#include <sstream>

#include "deeprandom/error.h"
#include "deeprandom/kernels.h"
#include "json.hpp"

namespace deeprandom {
namespace {

using nlohmann::json;

RateEstimate Proportion(int64_t hits, int64_t total) {
  RateEstimate r;
  if (total <= 0) return r;
  r.value = static_cast<double>(hits) / static_cast<double>(total);
  r.se = std::sqrt(r.value * (1 - r.value) / static_cast<double>(total));
  return r;
}

RateEstimate PairedMean(const std::vector<int>& d) {
  RateEstimate r;
  if (d.empty()) return r;
  double s = 0, s2 = 0;
  for (int v : d) {
    s += v;
    s2 += v * v;
  }
  const double m = s / d.size();
  r.value = m;
  const double var = std::max(0.0, s2 / d.size() - m * m);
  r.se = std::sqrt(var / d.size());
  return r;
}

Dist TidiedMixture(const std::vector<const Dist*>& parts, const SearchOptions& opt) {
  std::vector<Dist> tidied;
  tidied.reserve(parts.size());
  for (const Dist* d : parts) {
    tidied.push_back(d->Permuted(TidyingPermutation(QuadMatrixOf(*d).values, opt)));
  }
  std::vector<std::pair<const Dist*, double>> mix;
  for (const Dist& d : tidied) mix.push_back({&d, 1.0});
  return Dist::Mixture(mix);
}

}  // namespace

double StrategyAdversary::Estimate(const PublicView& view, Rng& rng) const {
  (void)rng;
  return EvalOnPairs(strategy_, view.i, view.j, view.pair_a, view.pair_b);
}

double RandomGuessAdversary::Estimate(const PublicView& view, Rng& rng) const {
  (void)view;
  return rng.Uniform();
}

double ColluderAdversary::Estimate(const PublicView& view, Rng& rng) const {
  (void)view;
  (void)rng;
  throw Error(ErrorCode::kCapability, "colluder needs the private context");
}

double ColluderAdversary::EstimatePrivileged(const PublicView& view,
                                             const PrivateContext& ctx,
                                             Rng& rng) const {
  (void)view;
  (void)rng;
  return ctx.round->v_b;
}

double FullKnowledgeBayesAdversary::Estimate(const PublicView& view,
                                             Rng& rng) const {
  (void)view;
  (void)rng;
  throw Error(ErrorCode::kCapability,
              "full-knowledge control needs the private context");
}

double FullKnowledgeBayesAdversary::EstimatePrivileged(const PublicView& view,
                                                       const PrivateContext& ctx,
                                                       Rng& rng) const {
  (void)rng;
  const int n = view.i.size();
  std::vector<double> ex, ey;
  if (!PosteriorMean(ctx.phi->dist, view.i, k_, &ex) ||
      !PosteriorMean(ctx.phi2->dist, view.j, k_, &ey)) {
    return k_ * view.i.Weight() * view.j.Weight() / (static_cast<double>(n) * n);
  }
  // E[sigma.x | sigma.i] = sigma.E[x | i].
  const Permutation& sa = ctx.phi->tidy;
  const Permutation& sb = ctx.phi2->tidy;
  double s = 0;
  for (int u = 0; u < n; ++u) s += ex[sa(u)] * ey[sb(u)];
  return std::clamp(s / (n * k_), 0.0, 1.0);
}

std::vector<std::string> StandardSuiteNames() {
  return {"mean-match", "counting", "table-library", "table-shadow", "bayes-public"};
}

std::shared_ptr<Adversary> MakeAdversary(const std::string& name, int n, double k,
                                         const PublicKnowledge& pub) {
  SearchOptions opt;
  if (name == "mean-match") {
    return std::make_shared<StrategyAdversary>(Strategy::MeanMatch(n, k));
  }
  if (name == "counting") {
    return std::make_shared<StrategyAdversary>(Strategy::Counting(n, k));
  }
  if (name == "random-guess") return std::make_shared<RandomGuessAdversary>();
  if (name == "colluder") return std::make_shared<ColluderAdversary>();
  if (name == "bayes-full-knowledge") {
    return std::make_shared<FullKnowledgeBayesAdversary>(k);
  }
  if (name == "table-library" || name == "table-shadow") {
    TripleStats sum(n, k);
    if (name == "table-library") {
      if (!pub.library) throw Error(ErrorCode::kConfig, "suite: no seed library");
      for (const SeedLibrary::Entry& e : pub.library->entries()) sum.Accumulate(e.stats);
    } else {
      if (pub.shadow_pool.empty()) throw Error(ErrorCode::kConfig, "suite: no shadow pool");
      for (const Dist& d : pub.shadow_pool) sum.Accumulate(ComputeTripleStats(d, d, k));
    }
    return std::make_shared<StrategyAdversary>(sum.Minimizer(name));
  }
  if (name == "bayes-public") {
    std::vector<const Dist*> parts;
    if (pub.library) {
      for (const SeedLibrary::Entry& e : pub.library->entries()) parts.push_back(&e.dist);
    }
    for (const Dist& d : pub.shadow_pool) parts.push_back(&d);
    if (parts.empty()) throw Error(ErrorCode::kConfig, "suite: no public prior");
    const Dist prior = TidiedMixture(parts, opt);
    return std::make_shared<StrategyAdversary>(Strategy::Bayes(prior, prior, k),
                                               name);
  }
  throw Error(ErrorCode::kConfig, "suite: unknown strategy '" + name + "'");
}

std::vector<std::shared_ptr<Adversary>> MakeSuite(const CampaignConfig& cfg,
                                                  const PublicKnowledge& pub) {
  std::vector<std::string> names;
  if (cfg.suite.empty()) {
    names = StandardSuiteNames();
  } else {
    std::stringstream in(cfg.suite);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (!item.empty()) names.push_back(item);
    }
  }
  if (cfg.controls) {
    for (const char* c : {"random-guess", "colluder", "bayes-full-knowledge"}) {
      names.push_back(c);
    }
  }
  std::vector<std::shared_ptr<Adversary>> out;
  for (const std::string& name : names) {
    out.push_back(MakeAdversary(name, cfg.session.n, cfg.session.k, pub));
  }
  return out;
}

void SyncDrgConfig(CampaignConfig* cfg) {
  cfg->drg.n = cfg->session.n;
  cfg->drg.k = cfg->session.k;
  cfg->drg.alpha = cfg->session.alpha;
  cfg->drg.search.seed = cfg->session.seed;
}

Dist ElectOne(const CampaignConfig& cfg, const SeedLibrary& library, uint64_t seed) {
  Rng rng(seed);
  const int64_t steps = cfg.drg_steps > 0 ? cfg.drg_steps : MaturityFor(cfg.drg);
  std::vector<DrgSequence> seqs;
  for (int s = 0; s < std::max(1, cfg.sequences); ++s) {
    const Dist& initial = library.entries()[rng.Below(library.size())].dist;
    seqs.emplace_back(cfg.drg, initial, Rng::Derive(seed, 10, s));
  }
  for (DrgSequence& s : seqs) {
    for (int64_t m = 0; m < steps; ++m) s.Step(library);
  }
  std::vector<const DrgSequence*> ptrs;
  for (const DrgSequence& s : seqs) ptrs.push_back(&s);
  return Elect(ptrs, cfg.drg, rng);
}

CampaignSetup PrepareCampaign(const CampaignConfig& cfg_in) {
  CampaignConfig cfg = cfg_in;
  SyncDrgConfig(&cfg);
  CampaignSetup setup;
  const uint64_t seed = cfg.session.seed;
  setup.library = std::make_shared<SeedLibrary>(SeedLibrary::Default(
      cfg.session.n, cfg.session.k, cfg.session.alpha, Rng::Derive(seed, 1),
      cfg.drg.max_support, cfg.drg.search));
  for (int p = 0; p < std::max(1, cfg.pool_size); ++p) {
    setup.pool.push_back(TidiedDist::Of(
        ElectOne(cfg, *setup.library, Rng::Derive(seed, 2, p)), cfg.drg.search));
  }
  setup.knowledge.library = setup.library;
  for (int p = 0; p < 2; ++p) {
    setup.knowledge.shadow_pool.push_back(
        ElectOne(cfg, *setup.library, Rng::Derive(seed ^ 0x5eadULL, 3, p)));
  }
  return setup;
}

StatsReport MonteCarlo(const CampaignConfig& cfg_in, std::vector<std::string>* log) {
  CampaignConfig cfg = cfg_in;
  ResolveSessionConfig(&cfg.session);
  SyncDrgConfig(&cfg);
  const CampaignSetup setup = PrepareCampaign(cfg);
  const auto suite = MakeSuite(cfg, setup.knowledge);
  return MonteCarloWith(cfg, setup, suite, log);
}

StatsReport MonteCarloWith(const CampaignConfig& cfg_in, const CampaignSetup& setup,
                           const std::vector<std::shared_ptr<Adversary>>& suite,
                           std::vector<std::string>* log) {
  CampaignConfig cfg = cfg_in;
  StatsReport rep;
  rep.warnings = ResolveSessionConfig(&cfg.session);
  SyncDrgConfig(&cfg);
  rep.config = cfg;
  rep.library_skipped = setup.library ? setup.library->skipped()
                                      : std::vector<std::string>{};
  const SessionConfig& s = cfg.session;
  const int64_t blocks = s.trials;
  const uint64_t seed = s.seed;
  std::vector<BlockOutcome> outcomes(blocks);
  std::vector<std::vector<std::string>> logs(log != nullptr ? blocks : 0);
  auto run = [&](int64_t b) {
    Rng rng(Rng::Derive(seed, 7, static_cast<uint64_t>(b)));
    const TidiedDist& phi = setup.pool[rng.Below(setup.pool.size())];
    const TidiedDist& phi2 = setup.pool[rng.Below(setup.pool.size())];
    outcomes[b] = RunBlock(s, phi, phi2, setup.pool, suite, b, rng,
                           log != nullptr ? &logs[b] : nullptr);
  };
  if (cfg.parallel) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4) num_threads(kernels::Workers())
    for (int64_t b = 0; b < blocks; ++b) {
      try {
        run(b);
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (int64_t b = 0; b < blocks; ++b) run(b);
  }
  if (log != nullptr) {
    log->push_back(SessionHeader(s));
    for (auto& l : logs) {
      for (auto& line : l) log->push_back(std::move(line));
    }
  }

  // Deterministic fold in block order.
  const size_t na = suite.size();
  rep.blocks = blocks;
  int64_t err_ab = 0, digit_total = 0;
  std::array<int64_t, 4> sit_digits{}, sit_digit_err{}, sit_err{};
  std::vector<int64_t> adv_err(na, 0), adv_digit_err(na, 0);
  std::vector<std::array<int64_t, 4>> adv_sit_err(na);
  std::vector<std::vector<int>> paired(na);
  for (const BlockOutcome& o : outcomes) {
    if (o.aborted) {
      ++rep.aborted;
      ++rep.psi_paths["aborted"];
      continue;
    }
    ++rep.psi_paths[o.psi_path_a];
    ++rep.psi_paths[o.psi_path_b];
    const int u = static_cast<int>(o.situation);
    ++rep.per_situation[u].blocks;
    sit_digits[u] += s.L;
    sit_digit_err[u] += o.digit_errors_ab;
    digit_total += s.L;
    for (size_t a = 0; a < na; ++a) {
      adv_digit_err[a] += o.digit_errors_axi[a];
      adv_sit_err[a][u] += o.digit_errors_axi[a];
    }
    if (o.decode_b == kDiscard) continue;
    ++rep.kept;
    ++rep.per_situation[u].kept;
    const int eab = o.decode_b != o.e_a;
    err_ab += eab;
    sit_err[u] += eab;
    for (size_t a = 0; a < na; ++a) {
      const int eax = o.e_xi[a] != o.e_a;
      adv_err[a] += eax;
      paired[a].push_back(eax - eab);
    }
  }
  rep.error_ab = Proportion(err_ab, rep.kept);
  rep.eps.value = 2 * std::min(rep.error_ab.value, 1 - rep.error_ab.value);
  rep.eps.se = 2 * rep.error_ab.se;
  rep.discard_rate = Proportion(blocks - rep.kept, blocks);
  rep.abort_rate = blocks > 0 ? static_cast<double>(rep.aborted) / blocks : 0;
  for (int u = 0; u < 4; ++u) {
    SituationStats& st = rep.per_situation[u];
    st.digit_error_ab =
        sit_digits[u] > 0 ? static_cast<double>(sit_digit_err[u]) / sit_digits[u] : 0;
    st.block_error_ab = st.kept > 0 ? static_cast<double>(sit_err[u]) / st.kept : 0;
  }
  rep.eps_prime = {0, 0};
  rep.worst_adversary = "";
  for (size_t a = 0; a < na; ++a) {
    AdversaryStats st;
    st.name = suite[a]->name();
    st.control = suite[a]->privileged() || st.name == "random-guess";
    st.kept = rep.kept;
    st.error = Proportion(adv_err[a], rep.kept);
    st.knowledge.value = std::fabs(1 - 2 * st.error.value);
    st.knowledge.se = 2 * st.error.se;
    st.advantage = PairedMean(paired[a]);
    st.digit_error =
        digit_total > 0 ? static_cast<double>(adv_digit_err[a]) / digit_total : 0;
    for (int u = 0; u < 4; ++u) {
      st.digit_error_by_situation[u] =
          sit_digits[u] > 0 ? static_cast<double>(adv_sit_err[a][u]) / sit_digits[u]
                            : 0;
    }
    if (!st.control &&
        (rep.worst_adversary.empty() || st.knowledge.value > rep.eps_prime.value)) {
      rep.eps_prime = st.knowledge;
      rep.worst_adversary = st.name;
    }
    rep.adversaries.push_back(st);
  }
  rep.reliability = 1 - rep.eps.value - rep.eps_prime.value;

  std::vector<uint8_t> ka, kb;
  for (const BlockOutcome& o : outcomes) {
    if (o.aborted || o.decode_b == kDiscard) continue;
    ka.push_back(static_cast<uint8_t>(o.e_a));
    kb.push_back(static_cast<uint8_t>(o.decode_b));
  }
  rep.irpa.input_bits = static_cast<int64_t>(ka.size());
  try {
    Rng rng(Rng::Derive(seed, 9));
    const IrpaResult r = IrpaSimplified(ka, kb, cfg.irpa, rng);
    rep.irpa.ran = true;
    rep.irpa.leaked = r.leaked;
    rep.irpa.output_bits = static_cast<int64_t>(r.final_a.size());
    rep.irpa.final_equal = r.final_a == r.final_b;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kReconciliationFailed) throw;
    rep.irpa.failure = e.what();
  }
  return rep;
}

std::string ReportToJson(const StatsReport& r) {
  auto rate = [](const RateEstimate& e) { return json{{"value", e.value}, {"se", e.se}}; };
  json advs = json::array();
  for (const AdversaryStats& a : r.adversaries) {
    advs.push_back({{"name", a.name},
                    {"control", a.control},
                    {"kept", a.kept},
                    {"error", rate(a.error)},
                    {"knowledge", rate(a.knowledge)},
                    {"advantage", rate(a.advantage)},
                    {"digit_error", a.digit_error},
                    {"digit_error_by_situation", a.digit_error_by_situation}});
  }
  json sits = json::object();
  for (int u = 0; u < 4; ++u) {
    const SituationStats& s = r.per_situation[u];
    sits[SituationName(static_cast<Situation>(u))] = {
        {"blocks", s.blocks},
        {"kept", s.kept},
        {"digit_error_ab", s.digit_error_ab},
        {"block_error_ab", s.block_error_ab}};
  }
  json j = {{"blocks", r.blocks},
            {"kept", r.kept},
            {"aborted", r.aborted},
            {"error_ab", rate(r.error_ab)},
            {"eps", rate(r.eps)},
            {"eps_prime", rate(r.eps_prime)},
            {"worst_adversary", r.worst_adversary},
            {"reliability", r.reliability},
            {"discard_rate", rate(r.discard_rate)},
            {"abort_rate", r.abort_rate},
            {"per_situation", sits},
            {"adversaries", advs},
            {"psi_paths", r.psi_paths},
            {"irpa",
             {{"ran", r.irpa.ran},
              {"failure", r.irpa.failure},
              {"input_bits", r.irpa.input_bits},
              {"leaked", r.irpa.leaked},
              {"output_bits", r.irpa.output_bits},
              {"final_equal", r.irpa.final_equal}}},
            {"warnings", r.warnings},
            {"library_skipped", r.library_skipped},
            {"interactivity", r.interactivity},
            {"config", CampaignConfigToText(r.config)}};
  return j.dump(2) + "\n";
}

std::string ReportToCsv(const StatsReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "section,name,field,value\n";
  auto row = [&](const std::string& sec, const std::string& name,
                 const std::string& field, double v) {
    out << sec << ',' << name << ',' << field << ',' << v << '\n';
  };
  row("summary", "", "blocks", r.blocks);
  row("summary", "", "kept", r.kept);
  row("summary", "", "aborted", r.aborted);
  row("summary", "", "error_ab", r.error_ab.value);
  row("summary", "", "error_ab_se", r.error_ab.se);
  row("summary", "", "eps", r.eps.value);
  row("summary", "", "eps_se", r.eps.se);
  row("summary", "", "eps_prime", r.eps_prime.value);
  row("summary", "", "eps_prime_se", r.eps_prime.se);
  row("summary", "", "reliability", r.reliability);
  row("summary", "", "discard_rate", r.discard_rate.value);
  row("summary", "", "discard_rate_se", r.discard_rate.se);
  for (int u = 0; u < 4; ++u) {
    const std::string name = SituationName(static_cast<Situation>(u));
    row("situation", name, "blocks", r.per_situation[u].blocks);
    row("situation", name, "digit_error_ab", r.per_situation[u].digit_error_ab);
    row("situation", name, "block_error_ab", r.per_situation[u].block_error_ab);
  }
  for (const AdversaryStats& a : r.adversaries) {
    row("adversary", a.name, "control", a.control);
    row("adversary", a.name, "error", a.error.value);
    row("adversary", a.name, "error_se", a.error.se);
    row("adversary", a.name, "knowledge", a.knowledge.value);
    row("adversary", a.name, "advantage", a.advantage.value);
    row("adversary", a.name, "advantage_se", a.advantage.se);
    row("adversary", a.name, "digit_error", a.digit_error);
  }
  row("irpa", "", "input_bits", r.irpa.input_bits);
  row("irpa", "", "leaked", r.irpa.leaked);
  row("irpa", "", "output_bits", r.irpa.output_bits);
  row("irpa", "", "final_equal", r.irpa.final_equal);
  return out.str();
}

ReplayResult ReplayAttack(const ReplayLog& log, const Adversary& adv) {
  ReplayResult r;
  Rng rng(Rng::Derive(log.cfg.seed, 0xa77ac));
  for (const ReplayBlock& b : log.blocks) {
    ++r.blocks;
    if (b.aborted || b.discarded) {
      r.e_xi.push_back(kDiscard);
      continue;
    }
    BitVector stream(log.cfg.L);
    for (size_t t = 0; t < b.rounds.size(); ++t) {
      stream.Set(static_cast<int>(t),
                 AdversaryDigit(adv, b.rounds[t], log.cfg, b.offset, rng));
    }
    r.e_xi.push_back(MajorityDecode(stream, b.published));
  }
  return r;
}

RateEstimate KnowledgeFromReplay(const ReplayResult& r, const std::vector<int>& truth) {
  if (truth.size() != r.e_xi.size()) {
    throw Error(ErrorCode::kInvalidInput, "truth and replay block counts differ");
  }
  int64_t kept = 0, err = 0;
  for (size_t b = 0; b < truth.size(); ++b) {
    if (truth[b] == kDiscard) continue;
    ++kept;
    err += r.e_xi[b] != truth[b];
  }
  const RateEstimate e = Proportion(err, kept);
  return {std::fabs(1 - 2 * e.value), 2 * e.se};
}

std::vector<int> KeptTruthFromLog(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    const std::string type = j.value("type", "");
    if (type == "block" && j.value("aborted", false)) {
      out.push_back(kDiscard);
    } else if (type == "block_end") {
      if (!j.contains("e_a")) {
        throw Error(ErrorCode::kInvalidInput, "truth log lacks private fields");
      }
      out.push_back(j.at("discarded").get<bool>() ? kDiscard : j.at("e_a").get<int>());
    }
  }
  return out;
}

}  // namespace deeprandom
