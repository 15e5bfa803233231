// Copyright 2026 The privbandit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "privbandit/json_io.h"

namespace privbandit {
namespace {

struct Result {
  int exit_code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string command = std::string(PRIVBANDIT_CLI_PATH) + " " + args + " 2>/dev/null";
  Result result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  std::array<char, 4096> buffer;
  std::size_t n;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) result.out.append(buffer.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

TEST(CliBoundsTest, LocalRate) {
  const auto r = run("bounds --regime local --K 2 --T 10000 --epsilon 1 --constant rate-only");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "regime,K,T,epsilon,c,variant,value\nlocal,2,10000,1,0,rate-only,29.0988\n");
}

TEST(CliBoundsTest, ValueFormat) {
  auto value = [](const std::string& args) { return std::stod(run(args + " --format value").out); };
  EXPECT_NEAR(value("bounds --regime local --K 2 --T 10000 --epsilon 1 --constant proof-constant"),
              0.13324, 1e-5);
  EXPECT_NEAR(value("bounds --regime instantaneous --K 2 --T 10000 --epsilon 1"), 27.975, 1e-3);
  EXPECT_NEAR(value("bounds --regime dp --K 2 --T 10000 --epsilon 1"), 0.36638, 1e-5);
  EXPECT_NEAR(value("bounds --regime local-problem-dep --env 0.75,0.5 --epsilon 1"), 0.073582, 5e-6);
  EXPECT_NEAR(value("bounds --regime local --quantity threshold --K 2 --epsilon 1"), 0.084670, 5e-6);
  EXPECT_NEAR(value("bounds --regime local --quantity gap --K 2 --T 100 --epsilon 1"), 0.029099, 1e-6);
}

TEST(CliBoundsTest, JsonFormat) {
  const auto r = run("bounds --regime dp --K 2 --T 10000 --epsilon 1 --c 1 --format json");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["regime"], "dp");
  EXPECT_EQ(j["variant"], "appendix-derivation");
  EXPECT_EQ(j["c"], 1.0);
}

TEST(CliBoundsTest, UsageErrors) {
  EXPECT_EQ(run("bounds --regime shuffle --K 2 --T 10 --epsilon 1").exit_code, 2);
  EXPECT_EQ(run("bounds --regime local --K 2 --T 10 --epsilon 0").exit_code, 2);
  EXPECT_EQ(run("bounds --no-such-flag").exit_code, 2);
  EXPECT_EQ(run("").exit_code, 2);
}

TEST(CliVerifyLemmaTest, Lemma3) {
  const auto r = run("verify-lemma 3 --K 2 --T 3 --grid 0.25");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out.rfind("PASS, max |slack| < 1e-9", 0), 0u) << r.out;
}

TEST(CliVerifyLemmaTest, OtherIds) {
  for (const char* id : {"4 --K 2 --T 2 --grid 0.5", "6 --count 100", "equivalence --count 3",
                         "composition --K 2 --T 2", "pinsker --count 100",
                         "bretagnolle-huber --count 100"}) {
    const auto r = run(std::string("verify-lemma ") + id);
    EXPECT_EQ(r.exit_code, 0) << id << "\n" << r.out;
    EXPECT_EQ(r.out.rfind("PASS", 0), 0u) << id;
  }
}

TEST(CliVerifyLemmaTest, UnknownIdIsUsageError) {
  EXPECT_EQ(run("verify-lemma 9").exit_code, 2);
  EXPECT_EQ(run("verify-lemma 5").exit_code, 2);
}

TEST(CliAuditTest, LocalMechanism) {
  const auto r = run("audit --definition local-mechanism --mechanism rr --epsilon 1");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = Json::parse(r.out);
  EXPECT_NEAR(j["epsilon_measured"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(j["verdict"], "PASS");
}

TEST(CliAuditTest, PanDpAndFailingClaim) {
  const auto r = run("audit --definition pan-dp --policy softmax --beta 5 --K 2 --T 2");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NEAR(Json::parse(r.out)["epsilon_measured"].get<double>(), 2.5, 1e-12);
  const auto fail = run("audit --definition pan-dp --policy softmax --beta 5 --K 2 --T 2 --claim 1");
  EXPECT_EQ(fail.exit_code, 1);
  EXPECT_EQ(Json::parse(fail.out)["verdict"], "FAIL");
}

TEST(CliAuditTest, Environment) {
  const auto r = run("audit --definition environment --policy uniform --env1 0.5,0.5 --env2 0.75,0.5 --T 1");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NEAR(Json::parse(r.out)["epsilon_measured"].get<double>(), 2.772589, 1e-6);
}

TEST(CliAuditTest, Errors) {
  EXPECT_EQ(run("audit --definition pan-dp --policy ucb1").exit_code, 2);
  EXPECT_EQ(run("audit --definition renyi").exit_code, 2);
  EXPECT_EQ(run("audit --definition pan-dp --policy softmax --K 3 --T 3 --cap 10").exit_code, 3);
}

TEST(CliSimulateTest, BitIdenticalOutput) {
  const std::string args = "simulate --policy ucb1 --env 0.9,0.5 --T 300 --R 8 --seed 4";
  const auto a = run(args + " --workers 1");
  const auto b = run(args + " --workers 3");
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("t,mean_regret,stderr,env_index\n", 0), 0u);
  EXPECT_EQ(run(args + " --workers 1").out, a.out);
}

TEST(CliSimulateTest, OutputFileAndSummary) {
  const auto csv = temp_path("privbandit_cli_test.csv");
  const auto r = run("simulate --policy ldp-softmax --beta 2 --mechanism rr --epsilon 1 "
                     "--hard-instance local --T 500 --R 4 --overlay local --output " + csv);
  ASSERT_EQ(r.exit_code, 0) << r.out;
  const auto j = Json::parse(r.out);
  EXPECT_TRUE(j.contains("max_regret"));
  EXPECT_EQ(read_file(csv).rfind("t,mean_regret,stderr,env_index\n", 0), 0u);
  std::filesystem::remove(csv);
}

TEST(CliSimulateTest, ConfigFile) {
  const auto config = temp_path("privbandit_cli_config.json");
  {
    std::ofstream out(config);
    out << R"({"policy": {"kind": "uniform"}, "environment": {"bernoulli": [0.5, 0.5]},
               "horizon": 1, "replications": 1})";
  }
  const auto r = run("simulate --config " + config);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "t,mean_regret,stderr,env_index\n1,0,0,0\n1,0,,max\n");
  {
    std::ofstream out(config);
    out << R"({"policy": {"kind": "uniform"}, "environment": {"bernoulli": [0.5, 0.5]}})";
  }
  EXPECT_EQ(run("simulate --config " + config).exit_code, 2);
  std::filesystem::remove(config);
}

TEST(CliSimulateTest, Errors) {
  EXPECT_EQ(run("simulate --policy ucb1 --env 0.9,0.5 --T 10 --output /nonexistent-dir/x.csv").exit_code, 3);
  EXPECT_EQ(run("simulate --policy ucb1 --env 0.9,1.5 --T 10").exit_code, 2);
  EXPECT_EQ(run("simulate --policy ucb1 --T 10").exit_code, 2);
}

TEST(CliSweepTest, Subset) {
  const auto r = run("sweep --only pinsker bretagnolle-huber");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("ALL PASS"), std::string::npos);
}

}  // namespace
}  // namespace privbandit
