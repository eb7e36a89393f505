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

#include <charconv>
#include <functional>
#include <map>
#include <sstream>

#include "deeprandom/error.h"
#include "deeprandom/harness.h"

namespace deeprandom {
namespace {

std::string Trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double ToDouble(const std::string& key, const std::string& v) {
  size_t used = 0;
  double out = 0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) {
    throw Error(ErrorCode::kConfig, key + ": expected a number, got '" + v + "'");
  }
  return out;
}

int64_t ToInt(const std::string& key, const std::string& v) {
  int64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw Error(ErrorCode::kConfig, key + ": expected an integer, got '" + v + "'");
  }
  return out;
}

uint64_t ToUint(const std::string& key, const std::string& v) {
  uint64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw Error(ErrorCode::kConfig,
                key + ": expected a non-negative integer, got '" + v + "'");
  }
  return out;
}

bool ToBool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw Error(ErrorCode::kConfig, key + ": expected true or false, got '" + v + "'");
}

using Setter = std::function<void(CampaignConfig*, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& Setters() {
  static const std::map<std::string, Setter> table = {
      {"alpha", [](auto* c, auto& k, auto& v) { c->session.alpha = ToDouble(k, v); }},
      {"n", [](auto* c, auto& k, auto& v) { c->session.n = static_cast<int>(ToInt(k, v)); }},
      {"k", [](auto* c, auto& k, auto& v) { c->session.k = ToDouble(k, v); }},
      {"L", [](auto* c, auto& k, auto& v) { c->session.L = static_cast<int>(ToInt(k, v)); }},
      {"K", [](auto* c, auto& k, auto& v) { c->session.K = ToDouble(k, v); }},
      {"gamma", [](auto* c, auto& k, auto& v) { c->session.gamma = ToDouble(k, v); }},
      {"t", [](auto* c, auto& k, auto& v) { c->session.t = ToDouble(k, v); }},
      {"trials", [](auto* c, auto& k, auto& v) { c->session.trials = ToInt(k, v); }},
      {"seed", [](auto* c, auto& k, auto& v) { c->session.seed = ToUint(k, v); }},
      {"psi_retries",
       [](auto* c, auto& k, auto& v) { c->session.psi_retries = static_cast<int>(ToInt(k, v)); }},
      {"pool_size",
       [](auto* c, auto& k, auto& v) { c->pool_size = static_cast<int>(ToInt(k, v)); }},
      {"sequences",
       [](auto* c, auto& k, auto& v) { c->sequences = static_cast<int>(ToInt(k, v)); }},
      {"drg_steps", [](auto* c, auto& k, auto& v) { c->drg_steps = ToInt(k, v); }},
      {"parallel", [](auto* c, auto& k, auto& v) { c->parallel = ToBool(k, v); }},
      {"controls", [](auto* c, auto& k, auto& v) { c->controls = ToBool(k, v); }},
      {"suite", [](auto* c, auto&, auto& v) { c->suite = v; }},
      {"irpa.margin",
       [](auto* c, auto& k, auto& v) { c->irpa.margin = static_cast<int>(ToInt(k, v)); }},
      {"irpa.passes",
       [](auto* c, auto& k, auto& v) { c->irpa.passes = static_cast<int>(ToInt(k, v)); }},
      {"irpa.first_block",
       [](auto* c, auto& k, auto& v) { c->irpa.first_block = static_cast<int>(ToInt(k, v)); }},
      {"irpa.max_error", [](auto* c, auto& k, auto& v) { c->irpa.max_error = ToDouble(k, v); }},
      {"irpa.check_parities",
       [](auto* c, auto& k, auto& v) { c->irpa.check_parities = static_cast<int>(ToInt(k, v)); }},
      {"drg.variant", [](auto* c, auto&, auto& v) { c->drg.variant = ParseDrgVariant(v); }},
      {"drg.candidates",
       [](auto* c, auto& k, auto& v) { c->drg.candidates = static_cast<int>(ToInt(k, v)); }},
      {"drg.threshold_factor",
       [](auto* c, auto& k, auto& v) { c->drg.threshold_factor = ToDouble(k, v); }},
      {"drg.regularize", [](auto* c, auto& k, auto& v) { c->drg.regularize = ToBool(k, v); }},
      {"drg.deterministic",
       [](auto* c, auto& k, auto& v) { c->drg.deterministic = ToBool(k, v); }},
      {"drg.max_support",
       [](auto* c, auto& k, auto& v) { c->drg.max_support = static_cast<size_t>(ToUint(k, v)); }},
      {"drg.mixture_retries",
       [](auto* c, auto& k, auto& v) { c->drg.mixture_retries = static_cast<int>(ToInt(k, v)); }},
      {"drg.c_prime", [](auto* c, auto& k, auto& v) { c->drg.c_prime = ToDouble(k, v); }},
      {"drg.dim_omega", [](auto* c, auto& k, auto& v) { c->drg.dim_omega = ToInt(k, v); }},
      {"drg.eps_prime", [](auto* c, auto& k, auto& v) { c->drg.eps_prime = ToDouble(k, v); }},
      {"drg.sleek_budget",
       [](auto* c, auto& k, auto& v) { c->drg.sleek_budget = static_cast<int>(ToInt(k, v)); }},
      {"drg.election_retries",
       [](auto* c, auto& k, auto& v) { c->drg.election_retries = static_cast<int>(ToInt(k, v)); }},
      {"drg.restarts",
       [](auto* c, auto& k, auto& v) { c->drg.search.restarts = static_cast<int>(ToInt(k, v)); }},
  };
  return table;
}

}  // namespace

CampaignConfig ParseCampaignConfig(const std::string& text) {
  CampaignConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfig,
                  "line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    const auto it = Setters().find(key);
    if (it == Setters().end()) {
      throw Error(ErrorCode::kConfig, key + ": unknown key (line " +
                                          std::to_string(lineno) + ")");
    }
    it->second(&cfg, key, value);
  }
  SyncDrgConfig(&cfg);
  return cfg;
}

std::string CampaignConfigToText(const CampaignConfig& c) {
  std::ostringstream out;
  out.precision(17);
  out << "alpha = " << c.session.alpha << "\n"
      << "n = " << c.session.n << "\n"
      << "k = " << c.session.k << "\n"
      << "L = " << c.session.L << "\n"
      << "K = " << c.session.K << "\n"
      << "gamma = " << c.session.gamma << "\n"
      << "t = " << c.session.t << "\n"
      << "trials = " << c.session.trials << "\n"
      << "seed = " << c.session.seed << "\n"
      << "psi_retries = " << c.session.psi_retries << "\n"
      << "pool_size = " << c.pool_size << "\n"
      << "sequences = " << c.sequences << "\n"
      << "drg_steps = " << c.drg_steps << "\n"
      << "parallel = " << (c.parallel ? "true" : "false") << "\n"
      << "controls = " << (c.controls ? "true" : "false") << "\n"
      << "suite = " << c.suite << "\n"
      << "irpa.margin = " << c.irpa.margin << "\n"
      << "irpa.passes = " << c.irpa.passes << "\n"
      << "irpa.first_block = " << c.irpa.first_block << "\n"
      << "irpa.max_error = " << c.irpa.max_error << "\n"
      << "irpa.check_parities = " << c.irpa.check_parities << "\n"
      << "drg.variant = " << DrgVariantName(c.drg.variant) << "\n"
      << "drg.candidates = " << c.drg.candidates << "\n"
      << "drg.threshold_factor = " << c.drg.threshold_factor << "\n"
      << "drg.regularize = " << (c.drg.regularize ? "true" : "false") << "\n"
      << "drg.deterministic = " << (c.drg.deterministic ? "true" : "false") << "\n"
      << "drg.max_support = " << c.drg.max_support << "\n"
      << "drg.mixture_retries = " << c.drg.mixture_retries << "\n"
      << "drg.c_prime = " << c.drg.c_prime << "\n"
      << "drg.dim_omega = " << c.drg.dim_omega << "\n"
      << "drg.eps_prime = " << c.drg.eps_prime << "\n"
      << "drg.sleek_budget = " << c.drg.sleek_budget << "\n"
      << "drg.election_retries = " << c.drg.election_retries << "\n"
      << "drg.restarts = " << c.drg.search.restarts << "\n";
  return out.str();
}

}  // namespace deeprandom
