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

#include "deeprandom/drg.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "deeprandom/error.h"
#include "deeprandom/kernels.h"
#include "json.hpp"

namespace deeprandom {
namespace {

using nlohmann::json;

double SelfPayoff(const Strategy& omega, const Dist& psi, const SearchOptions& opt,
                  Rng& rng) {
  (void)opt;
  if (omega.Invariant()) return ComputeTripleStats(psi, psi, omega.k()).PayoffOf(omega);
  return Payoff(omega, psi, psi, omega.k(), 4000, rng).payoff;
}

Dist RegularizedWithUniform(const Dist& phi) {
  if (phi.n() > 20) {
    throw Error(ErrorCode::kConfig, "drg.regularize needs n <= 20");
  }
  const Dist u = Dist::Uniform(phi.n());
  return Dist::Mixture({{&phi, 0.5}, {&u, 0.5}});
}

}  // namespace

const char* DrgVariantName(DrgVariant v) {
  switch (v) {
    case DrgVariant::kCombined: return "combined";
    case DrgVariant::kProcess1: return "process1";
    case DrgVariant::kProcess2: return "process2";
  }
  return "combined";
}

DrgVariant ParseDrgVariant(const std::string& name) {
  if (name == "combined") return DrgVariant::kCombined;
  if (name == "process1") return DrgVariant::kProcess1;
  if (name == "process2") return DrgVariant::kProcess2;
  throw Error(ErrorCode::kConfig, "drg.variant: unknown value '" + name + "'");
}

int64_t TableDimension(int n) {
  int64_t count = 0;
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b <= n; ++b) {
      for (int c = 0; c <= std::min(a, b); ++c) count += TripleFeasible(n, a, b, c);
    }
  }
  return count;
}

int64_t Maturity(int64_t dim, double c_prime) {
  if (dim < 1) throw Error(ErrorCode::kInvalidInput, "dim_omega must be >= 1");
  const double target = c_prime * static_cast<double>(dim);
  auto ok = [&](int64_t m) {
    return static_cast<double>(m) / std::log(static_cast<double>(m)) >= target;
  };
  // N / ln N increases for N >= 3.
  int64_t lo = 3;
  if (ok(lo)) return lo;
  int64_t hi = 4;
  while (!ok(hi)) hi *= 2;
  while (hi - lo > 1) {
    const int64_t mid = lo + (hi - lo) / 2;
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

int64_t MaturityFor(const DrgConfig& cfg) {
  const int64_t dim = cfg.dim_omega > 0 ? cfg.dim_omega : TableDimension(cfg.n);
  return Maturity(dim, cfg.c_prime);
}

Strategy MinStrategy(const Dist& phi, double k) {
  return ComputeTripleStats(phi, phi, k).Minimizer("table-min");
}

DefeatResult DefeatingPermutation(const Strategy& omega, const Dist& psi,
                                  double threshold, const SearchOptions& opt,
                                  Rng& rng) {
  const int n = psi.n();
  DefeatResult r;
  if (omega.Invariant()) {
    // The payoff does not depend on the relabeling.
    r.sigma = Permutation::Identity(n);
    r.payoff = SelfPayoff(omega, psi, opt, rng);
    r.method = "invariant";
    if (r.payoff >= threshold) return r;
    throw Error(ErrorCode::kThresholdInfeasible,
                "invariant strategy payoff " + std::to_string(r.payoff) +
                    " below threshold " + std::to_string(threshold));
  }
  auto value = [&](const Permutation& sigma) {
    Rng local(Rng::Derive(opt.seed, 31337));
    return SelfPayoff(omega, psi.Permuted(sigma), opt, local);
  };
  const int restarts = std::max(1, opt.restarts / 8);
  for (int attempt = 0; attempt <= restarts; ++attempt) {
    Permutation sigma =
        attempt == 0 ? Permutation::Identity(n) : Permutation::Random(n, rng);
    double best = value(sigma);
    bool improved = true;
    while (improved && best < threshold) {
      improved = false;
      for (int a = 0; a < n && !improved; ++a) {
        for (int b = a + 1; b < n && !improved; ++b) {
          std::vector<int> m = sigma.map();
          std::swap(m[a], m[b]);
          const Permutation cand(m);
          const double v = value(cand);
          if (v > best) {
            best = v;
            sigma = cand;
            improved = true;
          }
        }
      }
    }
    if (best >= threshold) {
      r.sigma = sigma;
      r.payoff = best;
      r.method = attempt == 0 ? "climb" : "restart";
      return r;
    }
  }
  if (n <= 8) {
    auto f = [&](const std::vector<int>& p) { return value(Permutation(p)); };
    const kernels::PermSweepResult s = kernels::serial::PermSweep(n, f);
    if (s.best >= threshold) {
      r.sigma = Permutation(s.argmax);
      r.payoff = s.best;
      r.method = "exhaustive";
      return r;
    }
  }
  throw Error(ErrorCode::kThresholdInfeasible,
              "no relabeling reaches threshold " + std::to_string(threshold));
}

void SeedLibrary::Add(const std::string& name, const Dist& dist,
                      const SearchOptions& opt) {
  if (dist.n() != n_) throw Error(ErrorCode::kInvalidInput, "library dims");
  if (!ZetaMember(dist, alpha_, opt)) {
    throw Error(ErrorCode::kPrecondition, "seed '" + name + "' not in zeta(alpha)");
  }
  Entry e{name, dist, ComputeTripleStats(dist, dist, k_),
          TidyingPermutation(QuadMatrixOf(dist).values, opt)};
  entries_.push_back(std::move(e));
}

Dist BlockSumSeed(int n, Rng* rng, int samples) {
  if (n % 2 != 0) throw Error(ErrorCode::kInvalidInput, "block seed needs even n");
  const int h = n / 2;
  if (n <= 16) {
    std::vector<SupportPoint> pts;
    for (uint32_t lo = 0; lo < (1u << h); ++lo) {
      const int t1 = std::popcount(lo);
      const double w1 = 1.0 / ((h + 1) * std::round(std::exp(LogBinomial(h, t1))));
      for (uint32_t hi = 0; hi < (1u << h); ++hi) {
        const int t2 = std::popcount(hi);
        const double w2 =
            1.0 / ((h + 1) * std::round(std::exp(LogBinomial(h, t2))));
        BitVector x(n);
        for (int s = 0; s < h; ++s) {
          x.Set(s, (lo >> s) & 1u);
          x.Set(h + s, (hi >> s) & 1u);
        }
        pts.push_back({x, w1 * w2});
      }
    }
    return Dist(n, pts);
  }
  if (rng == nullptr) throw Error(ErrorCode::kInvalidInput, "block seed needs rng");
  std::vector<SupportPoint> pts;
  for (int t = 0; t < samples; ++t) {
    BitVector x(n);
    for (int block = 0; block < 2; ++block) {
      const int ones = static_cast<int>(rng->Below(h + 1));
      std::vector<int> idx(h);
      std::iota(idx.begin(), idx.end(), block * h);
      for (int s = 0; s < ones; ++s) {
        std::swap(idx[s], idx[s + rng->Below(h - s)]);
        x.Set(idx[s], true);
      }
    }
    pts.push_back({x, 1.0});
  }
  return Dist(n, pts);
}

SeedLibrary SeedLibrary::Default(int n, double k, double alpha, uint64_t seed,
                                 size_t max_support, const SearchOptions& opt) {
  SeedLibrary lib(n, k, alpha);
  Rng rng(seed);
  auto try_add = [&](const std::string& name, const Dist& d) {
    try {
      lib.Add(name, d, opt);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kPrecondition) throw;
      lib.NoteSkipped(name);
    }
  };
  std::vector<int> weights;
  for (int r : {n / 8, n / 4, 3 * n / 8, n / 2}) {
    r = std::max(2, r);
    if (std::find(weights.begin(), weights.end(), r) == weights.end()) {
      weights.push_back(r);
    }
  }
  for (int r : weights) {
    try_add("dirac-lead-" + std::to_string(r), Dist::Dirac(BitVector::Leading(n, r)));
    const Permutation p = Permutation::Random(n, rng);
    try_add("dirac-rand-" + std::to_string(r),
            Dist::Dirac(p.Apply(BitVector::Leading(n, r))));
  }
  Dist block = BlockSumSeed(n, &rng, static_cast<int>(max_support));
  if (block.size() > max_support) block = block.Resampled(max_support, rng);
  try_add("block-sum", block);
  // Two aligned Dirac points on disjoint quarter blocks.
  const int q = std::max(2, n / 4);
  BitVector a = BitVector::Leading(n, q);
  BitVector b(n);
  for (int s = q; s < std::min(n, 2 * q); ++s) b.Set(s, true);
  try_add("quarter-pair", Dist(n, {{a, 0.5}, {b, 0.5}}));
  BitVector c = BitVector::Leading(n, n / 2);
  BitVector d = BitVector::Leading(n, q);
  try_add("nested-pair", Dist(n, {{c, 0.5}, {d, 0.5}}));
  if (lib.size() == 0) {
    throw Error(ErrorCode::kConfig, "seed library is empty at this alpha");
  }
  return lib;
}

DrgSequence::DrgSequence(const DrgConfig& cfg, const Dist& initial, uint64_t seed)
    : cfg_(cfg), current_(initial), rng_(seed) {
  if (initial.n() != cfg.n) throw Error(ErrorCode::kInvalidInput, "drg dims");
  current_stats_ = ComputeTripleStats(current_, current_, cfg_.k);
  history_ = current_stats_;
  history_count_ = 1;
}

double DrgSequence::HistoryMinPayoff() const {
  return history_.MinPayoff() / static_cast<double>(history_count_);
}

StepReport DrgSequence::Step(const SeedLibrary& library,
                             const std::vector<const Dist*>& peers) {
  if (library.size() == 0) throw Error(ErrorCode::kPrecondition, "empty library");
  const int n = cfg_.n;
  StepReport rep;
  const Strategy w_cur = current_stats_.Minimizer("w-current");
  const Strategy w_avg = history_.Minimizer("w-average");
  rep.payoff_before = current_stats_.PayoffOf(w_cur);

  struct Candidate {
    std::string name;
    const Dist* dist;
    TripleStats stats;
    Permutation tidy;
  };
  auto pick = [&](const Strategy& omega) {
    const size_t pool = library.size() + peers.size();
    std::vector<size_t> idx;
    if (cfg_.deterministic) {
      idx.resize(pool);
      std::iota(idx.begin(), idx.end(), 0);
    } else {
      for (int t = 0; t < std::max(1, cfg_.candidates); ++t) {
        idx.push_back(rng_.Below(pool));
      }
    }
    Candidate best;
    double best_payoff = -1;
    for (size_t id : idx) {
      Candidate c;
      if (id < library.size()) {
        const SeedLibrary::Entry& e = library.entries()[id];
        c = {e.name, &e.dist, e.stats, e.tidy};
      } else {
        const Dist* d = peers[id - library.size()];
        c = {"peer-" + std::to_string(id - library.size()), d,
             ComputeTripleStats(*d, *d, cfg_.k),
             TidyingPermutation(QuadMatrixOf(*d).values, cfg_.search)};
      }
      const double v = c.stats.PayoffOf(omega);
      if (v > best_payoff) {
        best_payoff = v;
        best = c;
      }
    }
    return best;
  };
  auto defeat = [&](const Strategy& omega, const Candidate& c) {
    const Dist tidied = c.dist->Permuted(c.tidy);
    double mean = c.stats.PayoffOf(omega);
    double target = cfg_.threshold_factor * mean;
    DefeatResult d;
    try {
      d = DefeatingPermutation(omega, tidied, target, cfg_.search, rng_);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kThresholdInfeasible) throw;
      target = mean;
      d = DefeatingPermutation(omega, tidied, target, cfg_.search, rng_);
    }
    rep.threshold = target;
    return Compose(c.tidy, d.sigma);
  };

  const Candidate psi = pick(w_cur);
  const Candidate psi2 = pick(w_avg);
  rep.psi = psi.name;
  rep.psi2 = psi2.name;
  const Permutation mu =
      cfg_.deterministic ? Permutation::Identity(n) : Permutation::Random(n, rng_);
  const Dist part1 = psi.dist->Permuted(Compose(defeat(w_cur, psi), mu));
  const Dist part2 = psi2.dist->Permuted(Compose(defeat(w_avg, psi2), mu));

  Dist next;
  bool accepted = false;
  for (int attempt = 0; attempt < std::max(1, cfg_.mixture_retries); ++attempt) {
    double a = cfg_.deterministic ? 0.5 : rng_.Uniform();
    if (cfg_.variant == DrgVariant::kProcess1) a = 1.0;
    if (cfg_.variant == DrgVariant::kProcess2) a = 0.0;
    Dist cand = a >= 1.0   ? part1
                : a <= 0.0 ? part2
                           : Dist::Mixture({{&part1, a}, {&part2, 1.0 - a}});
    if (cfg_.regularize) cand = RegularizedWithUniform(cand);
    cand = cand.Resampled(cfg_.max_support, rng_);
    rep.mix_weight = a;
    if (ZetaMember(cand, cfg_.alpha, cfg_.search)) {
      next = std::move(cand);
      accepted = true;
      break;
    }
    if (cfg_.variant != DrgVariant::kCombined || cfg_.deterministic) break;
  }
  if (!accepted) {
    rep.fallback_single = true;
    const Dist& single = cfg_.variant == DrgVariant::kProcess2 ? part2 : part1;
    next = single.Resampled(cfg_.max_support, rng_);
    if (!ZetaMember(next, cfg_.alpha, cfg_.search)) next = single;
    rep.mix_weight = cfg_.variant == DrgVariant::kProcess2 ? 0.0 : 1.0;
  }
  current_ = std::move(next);
  current_stats_ = ComputeTripleStats(current_, current_, cfg_.k);
  history_.Accumulate(current_stats_);
  ++history_count_;
  ++step_;
  rep.payoff_after = current_stats_.PayoffOf(w_cur);
  rep.history_min = HistoryMinPayoff();
  return rep;
}

std::string DrgConfigToJson(const DrgConfig& c) {
  json j = {{"n", c.n},
            {"k", c.k},
            {"alpha", c.alpha},
            {"variant", DrgVariantName(c.variant)},
            {"candidates", c.candidates},
            {"threshold_factor", c.threshold_factor},
            {"regularize", c.regularize},
            {"deterministic", c.deterministic},
            {"max_support", c.max_support},
            {"mixture_retries", c.mixture_retries},
            {"c_prime", c.c_prime},
            {"dim_omega", c.dim_omega},
            {"eps_prime", c.eps_prime},
            {"sleek_budget", c.sleek_budget},
            {"election_retries", c.election_retries},
            {"restarts", c.search.restarts},
            {"search_seed", c.search.seed}};
  return j.dump();
}

DrgConfig DrgConfigFromJson(const std::string& text) {
  const json j = json::parse(text);
  DrgConfig c;
  c.n = j.at("n");
  c.k = j.at("k");
  c.alpha = j.at("alpha");
  c.variant = ParseDrgVariant(j.at("variant"));
  c.candidates = j.at("candidates");
  c.threshold_factor = j.at("threshold_factor");
  c.regularize = j.at("regularize");
  c.deterministic = j.at("deterministic");
  c.max_support = j.at("max_support");
  c.mixture_retries = j.at("mixture_retries");
  c.c_prime = j.at("c_prime");
  c.dim_omega = j.at("dim_omega");
  c.eps_prime = j.at("eps_prime");
  c.sleek_budget = j.at("sleek_budget");
  c.election_retries = j.at("election_retries");
  c.search.restarts = j.at("restarts");
  c.search.seed = j.at("search_seed");
  return c;
}

std::string DrgSequence::Checkpoint() const {
  json cells = json::array();
  for (const auto& [key, cell] : history_.cells()) {
    cells.push_back({key, cell[0], cell[1], cell[2]});
  }
  json j = {{"config", json::parse(DrgConfigToJson(cfg_))},
            {"step", step_.str()},
            {"current", current_.Serialize()},
            {"rng", rng_.SaveState()},
            {"history_count", history_count_},
            {"history", cells}};
  return j.dump();
}

DrgSequence DrgSequence::Restore(const std::string& text) {
  const json j = json::parse(text);
  const DrgConfig cfg = DrgConfigFromJson(j.at("config").dump());
  DrgSequence seq(cfg, Dist::Parse(j.at("current").get<std::string>()), 0);
  seq.step_ = StepCounter(j.at("step").get<std::string>());
  seq.rng_.LoadState(j.at("rng").get<std::string>());
  seq.history_ = TripleStats(cfg.n, cfg.k);
  for (const json& row : j.at("history")) {
    seq.history_.AddCell(row.at(0).get<uint64_t>(), row.at(1).get<double>(),
                         row.at(2).get<double>(), row.at(3).get<double>());
  }
  seq.history_count_ = j.at("history_count");
  return seq;
}

Dist Elect(const std::vector<const DrgSequence*>& sequences, const DrgConfig& cfg,
           Rng& rng) {
  if (sequences.empty()) throw Error(ErrorCode::kInvalidInput, "no sequences");
  const int64_t mature = MaturityFor(cfg);
  for (const DrgSequence* s : sequences) {
    if (s->step() < mature) {
      throw Error(ErrorCode::kNotMature,
                  "sequence at step " + s->step().str() + " < maturity " +
                      std::to_string(mature));
    }
  }
  const int n = cfg.n;
  const Permutation mu = Permutation::Random(n, rng);
  std::vector<Dist> parts;
  for (const DrgSequence* s : sequences) {
    const Permutation t =
        TidyingPermutation(QuadMatrixOf(s->current()).values, cfg.search);
    parts.push_back(s->current().Permuted(Compose(t, mu)));
  }
  std::vector<std::pair<const Dist*, double>> mix;
  for (const Dist& d : parts) mix.push_back({&d, 1.0 / parts.size()});
  const Dist combined = Dist::Mixture(mix);
  const Lemma3Preset preset = MakeLemma3Preset(n, cfg.alpha, cfg.eps_prime);
  for (int attempt = 0; attempt < std::max(1, cfg.election_retries); ++attempt) {
    Dist out = ApplyLemma3(combined, preset, SleekMode::kSampled, &rng,
                           cfg.sleek_budget)
                   .Resampled(cfg.max_support, rng);
    if (ZetaMember(out, cfg.alpha, cfg.search)) return out;
  }
  Dist out = combined.Resampled(cfg.max_support, rng);
  if (ZetaMember(out, cfg.alpha, cfg.search)) return out;
  if (ZetaMember(combined, cfg.alpha, cfg.search)) return combined;
  throw Error(ErrorCode::kInternal, "election left zeta(alpha)");
}

}  // namespace deeprandom
