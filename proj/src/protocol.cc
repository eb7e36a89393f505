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

#include "deeprandom/protocol.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "deeprandom/error.h"
#include "json.hpp"

namespace deeprandom {
namespace {

using nlohmann::json;

std::string ParamString(const ParamVector& x) {
  std::string out;
  bool binary = true;
  for (double v : x.values()) binary = binary && (v == 0.0 || v == 1.0);
  if (binary) {
    for (double v : x.values()) out.push_back(v == 1.0 ? '1' : '0');
    return out;
  }
  std::ostringstream s;
  s.precision(17);
  for (int t = 0; t < x.size(); ++t) s << (t ? "," : "") << x[t];
  return s.str();
}

// sum over x containing T of p_x q^{|x|}, q = 1 - 1/k.
double SetLikelihood(const std::vector<SupportPoint>& pts,
                     const std::vector<double>& qpow, const BitVector& set) {
  double total = 0;
  for (size_t t = 0; t < pts.size(); ++t) {
    if (set.SubsetOf(pts[t].x)) total += qpow[t];
  }
  return total;
}

// Lexicographically smallest sigma with sigma(T) = I.
Permutation SmallestMapping(const BitVector& set, const BitVector& i) {
  const int n = i.size();
  std::vector<int> ones = i.Ones();
  std::vector<int> zeros;
  for (int s = 0; s < n; ++s) {
    if (!i.Get(s)) zeros.push_back(s);
  }
  std::vector<int> map(n);
  size_t a = 0, b = 0;
  for (int s = 0; s < n; ++s) map[s] = set.Get(s) ? ones[a++] : zeros[b++];
  return Permutation(map);
}

void SetBit(std::vector<uint8_t>* key, size_t s) { (*key)[s] ^= 1; }

int ParityOf(const std::vector<uint8_t>& key, const std::vector<size_t>& idx,
             size_t lo, size_t hi) {
  int p = 0;
  for (size_t t = lo; t < hi; ++t) p ^= key[idx[t]];
  return p;
}

}  // namespace

double DefaultGamma(int n) { return 1.0 / (2.0 * std::log(static_cast<double>(n))); }

double DefaultT(int n, double k, double gamma) {
  return std::max(4.0 * k / n, gamma / 4.0);
}

std::vector<std::string> ResolveSessionConfig(SessionConfig* cfg) {
  std::vector<std::string> warnings;
  if (cfg->n <= 4 || cfg->n % 2 != 0) {
    throw Error(ErrorCode::kConfig, "n: must be even and > 4");
  }
  if (!(cfg->alpha > 0)) throw Error(ErrorCode::kConfig, "alpha: must be > 0");
  if (!(cfg->k >= 1)) throw Error(ErrorCode::kConfig, "k: must be >= 1");
  if (cfg->L < 1) throw Error(ErrorCode::kConfig, "L: must be >= 1");
  if (!(cfg->K > 0)) throw Error(ErrorCode::kConfig, "K: must be > 0");
  if (cfg->trials < 1) throw Error(ErrorCode::kConfig, "trials: must be >= 1");
  if (cfg->psi_retries < 1) {
    throw Error(ErrorCode::kConfig, "psi_retries: must be >= 1");
  }
  if (cfg->gamma == 0) cfg->gamma = DefaultGamma(cfg->n);
  if (cfg->t == 0) cfg->t = DefaultT(cfg->n, cfg->k, cfg->gamma);
  if (!(cfg->gamma < 0.5)) throw Error(ErrorCode::kConfig, "gamma: must be < 1/2");
  if (!(cfg->t > 0)) throw Error(ErrorCode::kConfig, "t: must be > 0");
  if (!(cfg->gamma > cfg->t)) {
    throw Error(ErrorCode::kConfig, "gamma: must exceed t (gamma=" +
                                        std::to_string(cfg->gamma) +
                                        ", t=" + std::to_string(cfg->t) + ")");
  }
  if (cfg->K * cfg->K >= cfg->k) {
    warnings.push_back("K: gauge not small against sqrt(k)");
  }
  if (cfg->K <= 1) warnings.push_back("K: gauge not large against 1");
  return warnings;
}

const char* SituationName(Situation s) {
  switch (s) {
    case Situation::kS0: return "S0";
    case Situation::kS1: return "S1";
    case Situation::kS2: return "S2";
    case Situation::kS3: return "S3";
  }
  return "S0";
}

TidiedDist TidiedDist::Of(const Dist& d, const SearchOptions& opt) {
  return {d, TidyingPermutation(QuadMatrixOf(d).values, opt)};
}

RoundDraw DrawRound(const Dist& phi, const Dist& phi2, double k, Rng& rng) {
  RoundDraw r;
  const BitVector xb = phi.Sample(rng);
  const BitVector yb = phi2.Sample(rng);
  r.x = ParamVector::FromBits(xb);
  r.y = ParamVector::FromBits(yb);
  r.i = DrawDegraded(xb, k, rng);
  r.j = DrawDegraded(yb, k, rng);
  return r;
}

double PsiBandMass(const Dist& psi, const BitVector& i, double k) {
  const double centre = k * i.Weight();
  const double half = std::sqrt(static_cast<double>(psi.n()));
  return psi.MassWithOnesIn(centre - half, centre + half);
}

bool PsiCompatible(const Dist& psi, const BitVector& i, double k) {
  return PsiBandMass(psi, i, k) >=
         1.0 / (2.0 * std::sqrt(static_cast<double>(psi.n())));
}

Dist ReweightPsiToBand(const Dist& psi, const BitVector& i, double k) {
  const double need = 1.0 / (2.0 * std::sqrt(static_cast<double>(psi.n())));
  const double have = PsiBandMass(psi, i, k);
  if (have >= need) return psi;
  if (have <= 0) {
    throw Error(ErrorCode::kDispersionConstraint,
                "psi has no support in the |x| band for |i|=" +
                    std::to_string(i.Weight()));
  }
  const double centre = k * i.Weight();
  const double half = std::sqrt(static_cast<double>(psi.n()));
  std::vector<SupportPoint> pts;
  for (const SupportPoint& p : psi.points()) {
    const int w = p.x.Weight();
    const bool in = w >= centre - half && w <= centre + half;
    pts.push_back({p.x, in ? p.weight * need / have
                           : p.weight * (1 - need) / (1 - have)});
  }
  return Dist(psi.n(), pts);
}

PsiPick SelectPsi(const std::vector<TidiedDist>& pool, const BitVector& i,
                  double k, int retries, Rng& rng) {
  if (pool.empty()) throw Error(ErrorCode::kPrecondition, "empty psi pool");
  PsiPick pick;
  for (int t = 0; t < retries; ++t) {
    const TidiedDist& c = pool[rng.Below(pool.size())];
    if (PsiCompatible(c.dist, i, k)) {
      pick.psi = c;
      pick.path = t == 0 ? "direct" : "repick";
      pick.attempts = t + 1;
      return pick;
    }
  }
  size_t best = 0;
  double best_mass = -1;
  for (size_t t = 0; t < pool.size(); ++t) {
    const double m = PsiBandMass(pool[t].dist, i, k);
    if (m > best_mass) {
      best_mass = m;
      best = t;
    }
  }
  pick.psi = {ReweightPsiToBand(pool[best].dist, i, k), pool[best].tidy};
  pick.path = "reweight";
  pick.attempts = retries;
  return pick;
}

Permutation DispersionSigmaD(const BitVector& i, const TidiedDist& psi, double k,
                             SearchMode mode) {
  const int n = i.size();
  const int w = i.Weight();
  if (w == 0) return Permutation::Identity(n);
  const Dist tidied = psi.dist.Permuted(psi.tidy);
  const std::vector<SupportPoint>& pts = tidied.points();
  const double q = 1.0 - 1.0 / k;
  std::vector<double> qpow;
  for (const SupportPoint& p : pts) {
    qpow.push_back(p.weight * std::pow(q, p.x.Weight() - w));
  }
  const bool exact = mode == SearchMode::kExact ||
                     (mode == SearchMode::kAuto &&
                      std::exp(LogBinomial(n, w)) <= 2e5);
  if (exact) {
    std::vector<std::pair<double, BitVector>> scored;
    std::vector<int> pick(w);
    std::iota(pick.begin(), pick.end(), 0);
    double top = 0;
    while (true) {
      const BitVector set = BitVector::FromOnes(n, pick);
      const double v = SetLikelihood(pts, qpow, set);
      top = std::max(top, v);
      scored.push_back({v, set});
      int p = w - 1;
      while (p >= 0 && pick[p] == n - w + p) --p;
      if (p < 0) break;
      ++pick[p];
      for (int r = p + 1; r < w; ++r) pick[r] = pick[r - 1] + 1;
    }
    Permutation best;
    bool have = false;
    for (const auto& [v, set] : scored) {
      if (v < top * (1 - 1e-12)) continue;
      const Permutation cand = SmallestMapping(set, i);
      if (!have || cand < best) {
        best = cand;
        have = true;
      }
    }
    return best;
  }
  // Start from the best single positions, then swap in/out of the set.
  std::vector<double> single(n, 0.0);
  for (size_t t = 0; t < pts.size(); ++t) {
    for (int s : pts[t].x.Ones()) single[s] += qpow[t];
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return single[a] > single[b]; });
  BitVector set(n);
  for (int t = 0; t < w; ++t) set.Set(order[t], true);
  double best = SetLikelihood(pts, qpow, set);
  for (int pass = 0; pass < 4; ++pass) {
    bool improved = false;
    for (int a : set.Ones()) {
      for (int b = 0; b < n; ++b) {
        if (set.Get(b)) continue;
        BitVector cand = set;
        cand.Set(a, false);
        cand.Set(b, true);
        const double v = SetLikelihood(pts, qpow, cand);
        if (v > best * (1 + 1e-12)) {
          best = v;
          set = cand;
          improved = true;
          break;
        }
      }
      if (improved) break;
    }
    if (!improved) break;
  }
  return SmallestMapping(set, i);
}

Dispersion Disperse(const BitVector& i, const BitVector& j,
                    const TidiedDist& phi, const TidiedDist& phi2,
                    const TidiedDist& psi, const TidiedDist& psi2, double k,
                    Rng& rng) {
  Dispersion d;
  d.sigma_d = DispersionSigmaD(i, psi, k);
  d.sigma_d2 = DispersionSigmaD(j, psi2, k);
  d.b = static_cast<int>(rng.Below(2));
  d.b2 = static_cast<int>(rng.Below(2));
  d.pair_a = d.b == 0 ? PermPair{d.sigma_d, phi.tidy} : PermPair{phi.tidy, d.sigma_d};
  d.pair_b =
      d.b2 == 0 ? PermPair{d.sigma_d2, phi2.tidy} : PermPair{phi2.tidy, d.sigma_d2};
  return d;
}

Transcript FinishRound(const RoundDraw& draw, const TidiedDist& phi,
                       const TidiedDist& phi2, const Dispersion& disp,
                       int choice_a, int choice_b) {
  Transcript t;
  t.x = draw.x;
  t.y = draw.y;
  t.i = draw.i;
  t.j = draw.j;
  t.pair_a = disp.pair_a;
  t.pair_b = disp.pair_b;
  t.b = disp.b;
  t.b2 = disp.b2;
  t.sigma_a = disp.pair_b[choice_a];
  t.sigma_b = disp.pair_a[choice_b];
  const bool a_true = choice_a == (disp.b2 == 0 ? 1 : 0);
  const bool b_true = choice_b == (disp.b == 0 ? 1 : 0);
  t.situation = a_true ? (b_true ? Situation::kS0 : Situation::kS1)
                       : (b_true ? Situation::kS2 : Situation::kS3);
  const double n = draw.i.size();
  t.v_a = phi.tidy.Apply(draw.x).Dot(t.sigma_a.Apply(draw.j)) / n;
  t.v_b = phi2.tidy.Apply(draw.y).Dot(t.sigma_b.Apply(draw.i)) / n;
  return t;
}

Transcript RunRound(const SessionConfig& cfg_in, const Dist& phi,
                    const Dist& phi2, const Dist& psi, const Dist& psi2,
                    Rng& rng) {
  SessionConfig cfg = cfg_in;
  ResolveSessionConfig(&cfg);
  SearchOptions opt;
  opt.seed = cfg.seed;
  for (const Dist* d : {&phi, &phi2, &psi, &psi2}) {
    if (d->n() != cfg.n) throw Error(ErrorCode::kInvalidInput, "round dims");
  }
  if (!ZetaMember(phi, cfg.alpha, opt) || !ZetaMember(phi2, cfg.alpha, opt)) {
    throw Error(ErrorCode::kPrecondition, "phi and phi2 must be in zeta(alpha)");
  }
  const TidiedDist a = TidiedDist::Of(phi, opt);
  const TidiedDist b = TidiedDist::Of(phi2, opt);
  const RoundDraw draw = DrawRound(phi, phi2, cfg.k, rng);
  const PsiPick pa = SelectPsi({TidiedDist::Of(psi, opt)}, draw.i, cfg.k,
                               cfg.psi_retries, rng);
  const PsiPick pb = SelectPsi({TidiedDist::Of(psi2, opt)}, draw.j, cfg.k,
                               cfg.psi_retries, rng);
  const Dispersion disp = Disperse(draw.i, draw.j, a, b, pa.psi, pb.psi, cfg.k, rng);
  const int ca = static_cast<int>(rng.Below(2));
  const int cb = static_cast<int>(rng.Below(2));
  return FinishRound(draw, a, b, disp, ca, cb);
}

double CellWidth(const SessionConfig& cfg) {
  return cfg.K / std::sqrt(static_cast<double>(cfg.n) * cfg.k);
}

int SampleDigit(double v, const SessionConfig& cfg, double offset) {
  const double cell = std::floor((v + offset) / CellWidth(cfg));
  return static_cast<int>(std::fmod(std::fabs(cell), 2.0));
}

int CodeWeight(int e, const SessionConfig& cfg) {
  const double w0 = cfg.L * (0.5 - cfg.gamma);
  const double w1 = cfg.L * (0.5 + cfg.gamma);
  const long r0 = std::lround(w0);
  const long r1 = std::lround(w1);
  if (r0 < 0 || r1 > cfg.L || r0 >= r1) {
    throw Error(ErrorCode::kConfig,
                "L: code weights L(1/2 -+ gamma) do not round to distinct values");
  }
  return static_cast<int>(e ? r1 : r0);
}

BitVector DistillEncode(const BitVector& stream_a, int e, const SessionConfig& cfg,
                        Rng& rng) {
  if (stream_a.size() != cfg.L) throw Error(ErrorCode::kInvalidInput, "stream length");
  const int w = CodeWeight(e, cfg);
  std::vector<int> idx(cfg.L);
  std::iota(idx.begin(), idx.end(), 0);
  BitVector v(cfg.L);
  for (int s = 0; s < w; ++s) {
    std::swap(idx[s], idx[s + rng.Below(cfg.L - s)]);
    v.Set(idx[s], true);
  }
  return stream_a ^ v;
}

int DistillDecode(const BitVector& stream_b, const BitVector& published,
                  const SessionConfig& cfg) {
  const int w = (published ^ stream_b).Weight();
  if (w < cfg.L * (0.5 - cfg.t)) return 0;
  if (w > cfg.L * (0.5 + cfg.t)) return 1;
  return kDiscard;
}

int MajorityDecode(const BitVector& stream, const BitVector& published) {
  return 2 * (published ^ stream).Weight() > stream.size() ? 1 : 0;
}

IrpaResult IrpaSimplified(const std::vector<uint8_t>& key_a,
                          const std::vector<uint8_t>& key_b, const IrpaConfig& cfg,
                          Rng& rng) {
  if (key_a.size() != key_b.size()) {
    throw Error(ErrorCode::kInvalidInput, "irpa: key lengths differ");
  }
  const size_t len = key_a.size();
  IrpaResult r;
  std::vector<uint8_t> b = key_b;
  std::vector<size_t> idx(len);
  std::iota(idx.begin(), idx.end(), 0);
  size_t block = static_cast<size_t>(std::max(2, cfg.first_block));
  for (int pass = 0; pass < cfg.passes; ++pass) {
    size_t blocks = 0, odd = 0;
    if (pass > 0) {
      for (size_t s = len; s > 1; --s) std::swap(idx[s - 1], idx[rng.Below(s)]);
    }
    for (size_t start = 0; start < len; start += block) {
      size_t lo = start;
      size_t hi = std::min(len, start + block);
      ++r.leaked;
      ++blocks;
      if (ParityOf(key_a, idx, lo, hi) == ParityOf(b, idx, lo, hi)) continue;
      ++odd;
      while (hi - lo > 1) {
        const size_t mid = lo + (hi - lo) / 2;
        ++r.leaked;
        if (ParityOf(key_a, idx, lo, mid) != ParityOf(b, idx, lo, mid)) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      SetBit(&b, idx[lo]);
      ++r.corrected;
    }
    if (pass == 0 && blocks > 0) {
      // Odd-parity share q = (1 - (1 - 2e)^m) / 2 for error rate e, block size m.
      const double q = std::min(0.5 - 1e-12, static_cast<double>(odd) / blocks);
      const double e = 0.5 * (1 - std::pow(1 - 2 * q, 1.0 / block));
      if (e > cfg.max_error) {
        throw Error(ErrorCode::kReconciliationFailed,
                    "irpa: estimated error rate above reconciliation capability");
      }
    }
    if (block < len && pass < 3) block *= 2;
  }
  // Confirmation rounds: parities of random subsets must agree.
  for (int h = 0; h < cfg.check_parities; ++h) {
    int pa = 0, pb = 0;
    for (size_t s = 0; s < len; ++s) {
      if (rng.Below(2)) {
        pa ^= key_a[s];
        pb ^= b[s];
      }
    }
    ++r.leaked;
    if (pa != pb) {
      throw Error(ErrorCode::kReconciliationFailed,
                  "irpa: residual disagreement after all passes");
    }
  }
  if (len > 0 && static_cast<double>(r.corrected) / len > cfg.max_error) {
    throw Error(ErrorCode::kReconciliationFailed,
                "irpa: error rate above reconciliation capability");
  }
  const int64_t out_len = static_cast<int64_t>(len) - r.leaked - cfg.margin;
  if (out_len <= 0) {
    throw Error(ErrorCode::kReconciliationFailed,
                "irpa: nothing left after leakage and margin");
  }
  BitVector ka(static_cast<int>(len)), kb(static_cast<int>(len));
  for (size_t s = 0; s < len; ++s) {
    ka.Set(static_cast<int>(s), key_a[s]);
    kb.Set(static_cast<int>(s), b[s]);
  }
  for (int64_t o = 0; o < out_len; ++o) {
    BitVector row(static_cast<int>(len));
    for (size_t s = 0; s < len; ++s) row.Set(static_cast<int>(s), rng.Next() & 1u);
    r.final_a.push_back(static_cast<uint8_t>(row.Dot(ka) & 1));
    r.final_b.push_back(static_cast<uint8_t>(row.Dot(kb) & 1));
  }
  return r;
}

bool IsPublicField(const std::string& field) {
  static const char* kPublic[] = {"type",   "block",     "r",         "offset",
                                  "pair_a", "pair_b",    "i",         "j",
                                  "published", "discarded", "aborted", "reason"};
  for (const char* f : kPublic) {
    if (field == f) return true;
  }
  return false;
}

std::string SessionHeader(const SessionConfig& cfg) {
  json j = {{"type", "session"}, {"alpha", cfg.alpha}, {"n", cfg.n},
            {"k", cfg.k},        {"L", cfg.L},         {"K", cfg.K},
            {"gamma", cfg.gamma}, {"t", cfg.t},        {"trials", cfg.trials},
            {"seed", cfg.seed},  {"psi_retries", cfg.psi_retries}};
  return j.dump();
}

std::string PublicProjection(const std::string& record) {
  const json in = json::parse(record);
  if (in.value("type", "") == "session") return in.dump();
  json out = json::object();
  for (auto it = in.begin(); it != in.end(); ++it) {
    if (IsPublicField(it.key())) out[it.key()] = it.value();
  }
  return out.dump();
}

BlockOutcome RunBlock(const SessionConfig& cfg, const TidiedDist& phi,
                      const TidiedDist& phi2,
                      const std::vector<TidiedDist>& psi_pool,
                      const std::vector<std::shared_ptr<Adversary>>& adversaries,
                      int64_t block_index, Rng& rng,
                      std::vector<std::string>* log) {
  BlockOutcome out;
  Rng adv_rng = rng.Fork(0xadd);
  out.offset = rng.Uniform() * CellWidth(cfg);
  const RoundDraw first = DrawRound(phi.dist, phi2.dist, cfg.k, rng);
  PsiPick pa, pb;
  try {
    pa = SelectPsi(psi_pool, first.i, cfg.k, cfg.psi_retries, rng);
    pb = SelectPsi(psi_pool, first.j, cfg.k, cfg.psi_retries, rng);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDispersionConstraint) throw;
    out.aborted = true;
    out.abort_reason = e.what();
    out.e_xi.assign(adversaries.size(), kDiscard);
    out.digit_errors_axi.assign(adversaries.size(), 0);
    if (log != nullptr) {
      log->push_back(json{{"type", "block"},
                          {"block", block_index},
                          {"aborted", true},
                          {"reason", out.abort_reason}}
                         .dump());
    }
    return out;
  }
  out.psi_path_a = pa.path;
  out.psi_path_b = pb.path;
  const Dispersion disp =
      Disperse(first.i, first.j, phi, phi2, pa.psi, pb.psi, cfg.k, rng);
  const int ca = static_cast<int>(rng.Below(2));
  const int cb = static_cast<int>(rng.Below(2));
  if (log != nullptr) {
    log->push_back(json{{"type", "block"},
                        {"block", block_index},
                        {"aborted", false},
                        {"offset", out.offset},
                        {"pair_a", {disp.pair_a[0].ToString(), disp.pair_a[1].ToString()}},
                        {"pair_b", {disp.pair_b[0].ToString(), disp.pair_b[1].ToString()}},
                        {"b", disp.b},
                        {"b2", disp.b2},
                        {"choice_a", ca},
                        {"choice_b", cb},
                        {"psi_a", pa.path},
                        {"psi_b", pb.path}}
                       .dump());
  }
  const size_t na = adversaries.size();
  BitVector sa(cfg.L), sb(cfg.L);
  std::vector<BitVector> sx(na, BitVector(cfg.L));
  out.digit_errors_axi.assign(na, 0);
  for (int r = 0; r < cfg.L; ++r) {
    const RoundDraw draw =
        r == 0 ? first : DrawRound(phi.dist, phi2.dist, cfg.k, rng);
    const Transcript t = FinishRound(draw, phi, phi2, disp, ca, cb);
    if (r == 0) out.situation = t.situation;
    const int da = SampleDigit(t.v_a, cfg, out.offset);
    const int db = SampleDigit(t.v_b, cfg, out.offset);
    sa.Set(r, da);
    sb.Set(r, db);
    out.digit_errors_ab += da != db;
    const PublicView view = t.Public();
    const PrivateContext ctx{&t, &phi, &phi2};
    for (size_t a = 0; a < na; ++a) {
      const Adversary& adv = *adversaries[a];
      const double v = adv.privileged() ? adv.EstimatePrivileged(view, ctx, adv_rng)
                                        : adv.Estimate(view, adv_rng);
      const int dx = SampleDigit(v, cfg, out.offset);
      sx[a].Set(r, dx);
      out.digit_errors_axi[a] += da != dx;
    }
    if (log != nullptr) {
      log->push_back(json{{"type", "round"},
                          {"block", block_index},
                          {"r", r},
                          {"i", t.i.ToString()},
                          {"j", t.j.ToString()},
                          {"x", ParamString(t.x)},
                          {"y", ParamString(t.y)},
                          {"situation", SituationName(t.situation)},
                          {"v_a", t.v_a},
                          {"v_b", t.v_b}}
                         .dump());
    }
  }
  out.e_a = static_cast<int>(rng.Below(2));
  const BitVector published = DistillEncode(sa, out.e_a, cfg, rng);
  out.decode_b = DistillDecode(sb, published, cfg);
  for (size_t a = 0; a < na; ++a) out.e_xi.push_back(MajorityDecode(sx[a], published));
  if (log != nullptr) {
    log->push_back(json{{"type", "block_end"},
                        {"block", block_index},
                        {"published", published.ToString()},
                        {"discarded", out.decode_b == kDiscard},
                        {"e_a", out.e_a},
                        {"decode_b", out.decode_b}}
                       .dump());
  }
  return out;
}

ReplayLog ParsePublicLog(const std::string& text) {
  ReplayLog log;
  bool have_header = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception&) {
      throw Error(ErrorCode::kInvalidInput,
                  "transcript line " + std::to_string(lineno) + ": not JSON");
    }
    const std::string type = j.value("type", "");
    if (type == "session") {
      log.cfg.alpha = j.at("alpha");
      log.cfg.n = j.at("n");
      log.cfg.k = j.at("k");
      log.cfg.L = j.at("L");
      log.cfg.K = j.at("K");
      log.cfg.gamma = j.at("gamma");
      log.cfg.t = j.at("t");
      log.cfg.trials = j.at("trials");
      log.cfg.seed = j.at("seed");
      log.cfg.psi_retries = j.at("psi_retries");
      have_header = true;
    } else if (type == "block") {
      ReplayBlock b;
      b.index = j.at("block");
      b.aborted = j.value("aborted", false);
      if (!b.aborted) b.offset = j.at("offset");
      log.blocks.push_back(std::move(b));
      if (!log.blocks.back().aborted) {
        const json& pa = j.at("pair_a");
        const json& pb = j.at("pair_b");
        ReplayBlock& back = log.blocks.back();
        back.rounds.clear();
        // Pairs are kept on the first view and copied per round.
        PublicView proto;
        proto.pair_a = {Permutation::FromString(pa.at(0)),
                        Permutation::FromString(pa.at(1))};
        proto.pair_b = {Permutation::FromString(pb.at(0)),
                        Permutation::FromString(pb.at(1))};
        back.rounds.reserve(log.cfg.L);
        back.published = BitVector();
        back.rounds.push_back(proto);
      }
    } else if (type == "round") {
      if (log.blocks.empty()) {
        throw Error(ErrorCode::kInvalidInput, "round record before block");
      }
      ReplayBlock& b = log.blocks.back();
      const int r = j.at("r");
      PublicView v = b.rounds.front();
      v.i = BitVector::FromString(j.at("i"));
      v.j = BitVector::FromString(j.at("j"));
      if (r == 0) {
        b.rounds.front() = v;
      } else {
        b.rounds.push_back(v);
      }
    } else if (type == "block_end") {
      if (log.blocks.empty()) {
        throw Error(ErrorCode::kInvalidInput, "block_end before block");
      }
      log.blocks.back().published = BitVector::FromString(j.at("published"));
      log.blocks.back().discarded = j.at("discarded");
    } else {
      throw Error(ErrorCode::kInvalidInput,
                  "transcript line " + std::to_string(lineno) + ": unknown type");
    }
  }
  if (!have_header) throw Error(ErrorCode::kInvalidInput, "transcript: no header");
  return log;
}

int AdversaryDigit(const Adversary& adv, const PublicView& view,
                   const SessionConfig& cfg, double offset, Rng& rng) {
  return SampleDigit(adv.Estimate(view, rng), cfg, offset);
}

}  // namespace deeprandom
