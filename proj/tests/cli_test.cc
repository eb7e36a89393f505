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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path Scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("deeprandom_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Result Cli(const std::string& args, const std::string& env = "") {
  const fs::path err = Scratch() / "stderr.txt";
  const std::string cmd =
      env + " " + DEEPRANDOM_CLI_PATH + " " + args + " 2> " + err.string();
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = Slurp(err);
  return r;
}

std::string DeskConfig() {
  const fs::path p = Scratch() / "desk.cfg";
  std::ofstream(p) << "n = 8\nk = 4\nL = 8\nK = 2\ntrials = 200\nseed = 5\n"
                      "pool_size = 2\nsequences = 2\ndrg.dim_omega = 4\n"
                      "gamma = 0.25\nt = 0.0625\n";
  return p.string();
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(Cli("").code, 1);
  EXPECT_EQ(Cli("frobnicate").code, 1);
  const Result r = Cli("verify nope");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("unknown-check"), std::string::npos) << r.err;
  const Result bad = Cli("simulate --config " + DeskConfig() + " --format xml");
  EXPECT_EQ(bad.code, 1);
}

TEST(Cli, ConfigErrorNamesField) {
  const fs::path p = Scratch() / "bad.cfg";
  std::ofstream(p) << "n = 8\nk = four\n";
  const Result r = Cli("simulate --config " + p.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("k"), std::string::npos);
  EXPECT_NE(r.err.find("config"), std::string::npos) << r.err;
}

TEST(Cli, VerifyExitCodes) {
  const Result ok = Cli("verify prop1 prop10 --n 6");
  ASSERT_EQ(ok.code, 0) << ok.err;
  const json j = json::parse(ok.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["id"], "prop1");
  EXPECT_EQ(j[0]["status"], "pass");
  // This claim does not hold numerically; a failing check exits with 2.
  const Result bad = Cli("verify prop12");
  EXPECT_EQ(bad.code, 2);
  const Result csv = Cli("verify prop1 --n 6 --format csv");
  EXPECT_EQ(csv.out.rfind("id,status,measured,bound,detail", 0), 0u) << csv.out;
}

TEST(Cli, SimulateIsDeterministicAndHidesPrivateData) {
  const std::string cfg = DeskConfig();
  const fs::path t1 = Scratch() / "t1.jsonl", t2 = Scratch() / "t2.jsonl";
  const Result a = Cli("simulate --config " + cfg + " --transcript " + t1.string());
  const Result b = Cli("simulate --config " + cfg + " --public-only --transcript " +
                       t2.string());
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(Cli("simulate --config " + cfg).out, a.out);
  EXPECT_NE(Cli("simulate --config " + cfg + " --seed 6").out, a.out);
  std::istringstream pub(Slurp(t2));
  std::string line;
  int lines = 0;
  while (std::getline(pub, line)) {
    const json rec = json::parse(line);
    for (const char* f : {"x", "y", "b", "v_a", "v_b", "e_a", "e_b", "situation"}) {
      EXPECT_FALSE(rec.contains(f)) << f << " in " << line;
    }
    ++lines;
  }
  EXPECT_GT(lines, 0);
  EXPECT_GT(Slurp(t1).size(), Slurp(t2).size());
}

TEST(Cli, AttackReplayMatchesSimulation) {
  const std::string cfg = DeskConfig();
  const fs::path full = Scratch() / "full.jsonl", pub = Scratch() / "pub.jsonl";
  const Result sim = Cli("simulate --config " + cfg + " --transcript " + full.string());
  ASSERT_EQ(sim.code, 0);
  ASSERT_EQ(Cli("simulate --config " + cfg + " --public-only --transcript " +
                pub.string()).code, 0);
  const Result att = Cli("attack --config " + cfg + " --transcript " + pub.string() +
                         " --strategy counting --truth " + full.string());
  ASSERT_EQ(att.code, 0) << att.err;
  const json a = json::parse(att.out);
  double in_process = -1;
  const json report = json::parse(sim.out);
  for (const auto& adv : report["adversaries"]) {
    if (adv["name"] == a["strategy"]) in_process = adv["knowledge"]["value"];
  }
  EXPECT_NEAR(a["knowledge"].get<double>(), in_process, 1e-12);
  const Result priv = Cli("attack --config " + cfg + " --transcript " + pub.string() +
                          " --strategy colluder");
  EXPECT_EQ(priv.code, 1);
  EXPECT_EQ(Cli("attack --config " + cfg).code, 1);
}

TEST(Cli, DrgCheckpointResume) {
  const std::string cfg = DeskConfig();
  const fs::path whole = Scratch() / "whole.ckpt", half = Scratch() / "half.ckpt",
                 rest = Scratch() / "rest.ckpt";
  ASSERT_EQ(Cli("drg --config " + cfg + " --steps 6 --checkpoint " + whole.string()).code, 0);
  ASSERT_EQ(Cli("drg --config " + cfg + " --steps 3 --checkpoint " + half.string()).code, 0);
  ASSERT_EQ(Cli("drg --config " + cfg + " --steps 3 --resume " + half.string() +
                " --checkpoint " + rest.string()).code, 0);
  EXPECT_EQ(Slurp(whole), Slurp(rest));
  const Result e = Cli("drg --config " + cfg + " --elect");
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_EQ(Cli("drg --config " + cfg + " --elect").out, e.out);
}

TEST(Cli, SeedsAndWorkers) {
  const std::string cfg = DeskConfig();
  const Result s = Cli("seeds --config " + cfg);
  ASSERT_EQ(s.code, 0);
  const json j = json::parse(s.out);
  ASSERT_FALSE(j["entries"].empty());
  const std::string name = j["entries"][0]["name"];
  EXPECT_EQ(Cli("seeds --config " + cfg + " --show " + name).code, 0);
  EXPECT_EQ(Cli("seeds --config " + cfg + " --show nothing-here").code, 1);
  // Worker count must not change results.
  const Result one = Cli("verify lemma1 --n 6", "DEEPRANDOM_WORKERS=1");
  const Result two = Cli("verify lemma1 --n 6", "DEEPRANDOM_WORKERS=3");
  ASSERT_EQ(one.code, 0);
  const json a = json::parse(one.out), b = json::parse(two.out);
  EXPECT_EQ(a[0]["measured"], b[0]["measured"]);
}

}  // namespace
