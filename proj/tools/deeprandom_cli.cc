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

// Command line front end: simulate, drg, attack, verify, seeds.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "deeprandom/error.h"
#include "deeprandom/harness.h"
#include "deeprandom/kernels.h"

namespace {

using deeprandom::CampaignConfig;
using deeprandom::Error;
using deeprandom::ErrorCode;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;

struct Globals {
  std::string config;
  uint64_t seed = 0;
  int64_t trials = 0;
  std::string out;
  std::string format = "json";
  bool public_only = false;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, path + ": cannot open");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidInput, path + ": cannot write");
  out << text;
}

// Prints to stdout and, when --out is set, to the file as well.
void Emit(const Globals& g, const std::string& text) {
  std::cout << text;
  if (!text.empty() && text.back() != '\n') std::cout << '\n';
  if (!g.out.empty()) WriteFile(g.out, text);
}

CampaignConfig LoadConfig(const Globals& g) {
  CampaignConfig cfg;
  if (!g.config.empty()) cfg = deeprandom::ParseCampaignConfig(ReadFile(g.config));
  if (g.seed != 0) cfg.session.seed = g.seed;
  if (g.trials > 0) cfg.session.trials = g.trials;
  deeprandom::SyncDrgConfig(&cfg);
  return cfg;
}

int RunSimulate(const Globals& g, const std::string& transcript) {
  const CampaignConfig cfg = LoadConfig(g);
  std::vector<std::string> log;
  const deeprandom::StatsReport r =
      deeprandom::MonteCarlo(cfg, transcript.empty() ? nullptr : &log);
  if (!transcript.empty()) {
    std::ostringstream s;
    for (const std::string& line : log) {
      s << (g.public_only ? deeprandom::PublicProjection(line) : line) << '\n';
    }
    WriteFile(transcript, s.str());
  }
  Emit(g, g.format == "csv" ? deeprandom::ReportToCsv(r) : deeprandom::ReportToJson(r));
  return kExitOk;
}

int RunDrg(const Globals& g, int64_t steps, const std::string& checkpoint,
           const std::string& resume, bool elect) {
  const CampaignConfig cfg = LoadConfig(g);
  if (elect) {
    const auto library = deeprandom::SeedLibrary::Default(
        cfg.drg.n, cfg.drg.k, cfg.drg.alpha,
        deeprandom::Rng::Derive(cfg.session.seed, 1), cfg.drg.max_support);
    const deeprandom::Dist d =
        deeprandom::ElectOne(cfg, library, deeprandom::Rng::Derive(cfg.session.seed, 2));
    Emit(g, d.Serialize());
    return kExitOk;
  }
  const auto library = deeprandom::SeedLibrary::Default(
      cfg.drg.n, cfg.drg.k, cfg.drg.alpha, deeprandom::Rng::Derive(cfg.session.seed, 1),
      cfg.drg.max_support);
  if (library.size() == 0) {
    throw Error(ErrorCode::kPrecondition, "seed library is empty for this (n, alpha)");
  }
  deeprandom::DrgSequence seq =
      resume.empty()
          ? deeprandom::DrgSequence(cfg.drg, library.entries().front().dist,
                                    deeprandom::Rng::Derive(cfg.session.seed, 4))
          : deeprandom::DrgSequence::Restore(ReadFile(resume));
  if (steps <= 0) steps = deeprandom::MaturityFor(seq.config());
  json out;
  out["maturity"] = deeprandom::MaturityFor(seq.config());
  json trace = json::array();
  for (int64_t s = 0; s < steps; ++s) {
    const deeprandom::StepReport rep = seq.Step(library);
    if (s < 8 || s + 1 == steps) {
      trace.push_back({{"step", seq.step().str()},
                       {"payoff_before", rep.payoff_before},
                       {"payoff_after", rep.payoff_after},
                       {"threshold", rep.threshold},
                       {"history_min", rep.history_min},
                       {"psi", rep.psi},
                       {"psi2", rep.psi2}});
    }
  }
  out["steps"] = steps;
  out["trace"] = trace;
  out["history_min_payoff"] = seq.HistoryMinPayoff();
  out["support"] = seq.current().points().size();
  if (!checkpoint.empty()) WriteFile(checkpoint, seq.Checkpoint());
  Emit(g, out.dump(2));
  return kExitOk;
}

int RunAttack(const Globals& g, const std::string& transcript,
              const std::string& strategy, const std::string& truth) {
  const CampaignConfig cfg = LoadConfig(g);
  const deeprandom::ReplayLog log = deeprandom::ParsePublicLog(ReadFile(transcript));
  const deeprandom::CampaignSetup setup = deeprandom::PrepareCampaign(cfg);
  const auto adv = deeprandom::MakeAdversary(strategy, log.cfg.n, log.cfg.k, setup.knowledge);
  if (adv->privileged()) {
    throw Error(ErrorCode::kInvalidInput,
                "strategy: '" + strategy + "' needs private data");
  }
  const deeprandom::ReplayResult r = deeprandom::ReplayAttack(log, *adv);
  json out;
  out["strategy"] = adv->name();
  out["blocks"] = r.blocks;
  int64_t decided = 0;
  for (int e : r.e_xi) decided += e != deeprandom::kDiscard;
  out["decided"] = decided;
  if (!truth.empty()) {
    const auto kept = deeprandom::KeptTruthFromLog(ReadFile(truth));
    const deeprandom::RateEstimate k = deeprandom::KnowledgeFromReplay(r, kept);
    out["knowledge"] = k.value;
    out["knowledge_se"] = k.se;
  }
  out["e_xi"] = r.e_xi;
  Emit(g, out.dump(2));
  return kExitOk;
}

int RunVerify(const Globals& g, std::vector<std::string> ids, bool all,
              deeprandom::CheckParams p) {
  if (all) ids = deeprandom::CheckIds();
  if (ids.empty()) throw Error(ErrorCode::kInvalidInput, "verify: no check selected");
  if (g.seed != 0) p.seed = g.seed;
  if (g.trials > 0) p.trials = g.trials;
  bool failed = false;
  json arr = json::array();
  std::ostringstream csv;
  csv << "id,status,measured,bound,detail\n";
  for (const std::string& id : ids) {
    const deeprandom::CheckResult r = deeprandom::Verify(id, p);
    failed = failed || r.status == deeprandom::CheckStatus::kFail;
    arr.push_back({{"id", r.id},
                   {"status", deeprandom::CheckStatusName(r.status)},
                   {"measured", r.measured},
                   {"bound", r.bound},
                   {"detail", r.detail}});
    auto join = [](const std::vector<double>& v) {
      std::ostringstream s;
      s.precision(17);
      for (size_t t = 0; t < v.size(); ++t) s << (t ? ";" : "") << v[t];
      return s.str();
    };
    std::string detail = r.detail;
    std::replace(detail.begin(), detail.end(), ',', ';');
    csv << r.id << ',' << deeprandom::CheckStatusName(r.status) << ','
        << join(r.measured) << ',' << join(r.bound) << ',' << detail << '\n';
  }
  Emit(g, g.format == "csv" ? csv.str() : arr.dump(2));
  return failed ? kExitCheckFailed : kExitOk;
}

int RunSeeds(const Globals& g, const std::string& show) {
  const CampaignConfig cfg = LoadConfig(g);
  const auto library = deeprandom::SeedLibrary::Default(
      cfg.drg.n, cfg.drg.k, cfg.drg.alpha, deeprandom::Rng::Derive(cfg.session.seed, 1),
      cfg.drg.max_support);
  if (!show.empty()) {
    for (const auto& e : library.entries()) {
      if (e.name == show) {
        Emit(g, e.dist.Serialize());
        return kExitOk;
      }
    }
    throw Error(ErrorCode::kInvalidInput, "show: no seed named '" + show + "'");
  }
  json out;
  out["n"] = cfg.drg.n;
  out["alpha"] = cfg.drg.alpha;
  json entries = json::array();
  for (const auto& e : library.entries()) {
    entries.push_back({{"name", e.name},
                       {"support", e.dist.points().size()},
                       {"min_payoff", e.stats.MinPayoff()}});
  }
  out["entries"] = entries;
  out["skipped"] = library.skipped();
  Emit(g, out.dump(2));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* w = std::getenv("DEEPRANDOM_WORKERS")) {
    deeprandom::kernels::SetWorkers(std::atoi(w));
  }
  CLI::App app{"Deep Random key agreement lab"};
  app.require_subcommand(1);
  Globals g;
  auto add_globals = [&](CLI::App* sub) {
    sub->add_option("--config", g.config, "flat key = value campaign config");
    sub->add_option("--seed", g.seed, "master seed (overrides the config)");
    sub->add_option("--trials", g.trials, "blocks or samples (overrides the config)");
    sub->add_option("--out", g.out, "also write the output to this file");
    sub->add_option("--format", g.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--public-only", g.public_only, "drop private transcript fields");
  };

  std::string transcript;
  auto* simulate = app.add_subcommand("simulate", "run a Monte Carlo campaign");
  add_globals(simulate);
  simulate->add_option("--transcript", transcript, "write the block log here");

  int64_t steps = 0;
  std::string checkpoint, resume;
  bool elect = false;
  auto* drg = app.add_subcommand("drg", "run, checkpoint or elect the generator");
  add_globals(drg);
  drg->add_option("--steps", steps, "steps to run (0: to maturity)");
  drg->add_option("--checkpoint", checkpoint, "write the sequence state here");
  drg->add_option("--resume", resume, "continue from a checkpoint");
  drg->add_flag("--elect", elect, "run sequences to maturity and elect one value");

  std::string strategy = "counting", truth;
  auto* attack = app.add_subcommand("attack", "replay a public transcript");
  add_globals(attack);
  attack->add_option("--transcript", transcript, "public block log")->required();
  attack->add_option("--strategy", strategy, "adversary name");
  attack->add_option("--truth", truth, "private log used to score the replay");

  std::vector<std::string> ids;
  bool all = false;
  deeprandom::CheckParams params;
  auto* verify = app.add_subcommand("verify", "run numeric checks");
  add_globals(verify);
  verify->add_option("ids", ids, "check ids");
  verify->add_flag("--all", all, "run every registered check");
  verify->add_option("--n", params.n, "dimension");
  verify->add_option("--alpha", params.alpha, "zeta(alpha) parameter");
  verify->add_option("--pairs", params.pairs, "random pairs for pair checks");
  verify->add_option("--delta", params.delta, "prop12 step");

  std::string show;
  auto* seeds = app.add_subcommand("seeds", "list or print the seed library");
  add_globals(seeds);
  seeds->add_option("--show", show, "print one seed in text form");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*simulate) return RunSimulate(g, transcript);
    if (*drg) return RunDrg(g, steps, checkpoint, resume, elect);
    if (*attack) return RunAttack(g, transcript, strategy, truth);
    if (*verify) return RunVerify(g, ids, all, params);
    if (*seeds) return RunSeeds(g, show);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
