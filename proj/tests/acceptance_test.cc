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

// Acceptance suite. Prints one PASS/FAIL line per criterion with its runtime
// and exits nonzero if any criterion fails.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "privbandit/bounds.h"
#include "privbandit/experiment.h"
#include "privbandit/mechanism.h"
#include "privbandit/policy.h"
#include "privbandit/sweeps.h"

namespace pb = privbandit;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome from_sweeps(const std::vector<pb::SweepResult>& results) {
  Outcome o{true, ""};
  std::ostringstream detail;
  for (const auto& r : results) {
    o.pass = o.pass && r.passed();
    detail << r.name << ": cells=" << r.cells << " failures=" << r.failures
           << " worst=" << r.worst << "; ";
    if (!r.passed()) detail << "first failure: " << r.first_failure << "; ";
  }
  o.detail = detail.str();
  return o;
}

Outcome from_sweep(const pb::SweepResult& r) { return from_sweeps({r}); }

std::string run_cli(const std::string& args, int& exit_code) {
  std::string out;
  exit_code = -1;
#ifdef PRIVBANDIT_CLI_PATH
  const std::string command = std::string(PRIVBANDIT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return out;
  std::array<char, 1024> buffer;
  std::size_t n;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) out.append(buffer.data(), n);
  const int status = pclose(pipe);
  exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#else
  (void)args;
#endif
  return out;
}

// Agreement to four significant figures of `expected`.
bool four_figures(double value, double expected) {
  const double unit = std::pow(10.0, std::floor(std::log10(std::abs(expected))) - 3.0);
  return std::abs(value - expected) <= 0.5 * unit;
}

Outcome bound_formulas() {
  struct Case {
    const char* label;
    const char* args;
    double expected;
  };
  const std::vector<Case> cases = {
      {"local rate", "--regime local --K 2 --T 10000 --epsilon 1 --constant rate-only", 29.0988},
      {"local proof constant", "--regime local --K 2 --T 10000 --epsilon 1 --constant proof-constant",
       0.13324},
      {"instantaneous rate", "--regime instantaneous --K 2 --T 10000 --epsilon 1", 27.975},
      {"dp appendix", "--regime dp --K 2 --T 10000 --epsilon 1 --variant appendix-derivation", 0.36638},
      {"local problem-dependent", "--regime local-problem-dep --env 0.75,0.5 --epsilon 1", 0.073582},
      {"g(2,1)", "--regime local --quantity threshold --K 2 --epsilon 1", 0.084670},
  };
  Outcome o{true, ""};
  std::ostringstream detail;
  for (const auto& c : cases) {
    int code = 0;
    const std::string out = run_cli(std::string("bounds ") + c.args + " --format value", code);
    double value = std::nan("");
    try {
      value = std::stod(out);
    } catch (const std::exception&) {
    }
    const bool ok = code == 0 && four_figures(value, c.expected);
    o.pass = o.pass && ok;
    detail << c.label << "=" << value << (ok ? "" : " (MISMATCH)") << "; ";
  }
  o.detail = detail.str();
  return o;
}

Outcome hard_instance_experiment() {
  const double bound = pb::minimax_lb_local(2, 20000, 1.0, pb::ConstantMode::proof_constant()).value;
  const auto rr = pb::Mechanism::randomized_response(1.0);
  const std::vector<std::pair<std::string, pb::Policy>> policies = {
      {"ucb1", pb::Policy::ucb1(2)},
      {"ldp-ucb", pb::ldp_pipeline(pb::Policy::ucb1(2), rr)},
      {"ldp-softmax", pb::ldp_pipeline(pb::Policy::softmax(2, 2.0), rr)},
  };
  Outcome o{true, ""};
  std::ostringstream detail;
  detail << "bound=" << bound << "; ";
  for (const auto& [name, policy] : policies) {
    pb::ExperimentConfig config;
    config.policy = policy;
    config.hard_instance = pb::HardInstanceRequest{};
    config.horizon = 20000;
    config.replications = 200;
    config.master_seed = 42;
    const double regret = pb::run_experiment(config).final_max_regret();
    const bool ok = regret >= bound;
    o.pass = o.pass && ok;
    detail << name << " max-over-pair regret=" << regret << (ok ? "" : " (BELOW)") << "; ";
  }
  o.detail = detail.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 lemma3 equality", [] { return from_sweep(pb::sweep_lemma3()); }},
      {"2 lemma4 inequality", [] { return from_sweep(pb::sweep_lemma4()); }},
      {"3 lemma6 inequality", [] { return from_sweep(pb::sweep_lemma6({0.1, 0.5, 1.0}, 1000)); }},
      {"4 auditor exactness", [] { return from_sweep(pb::sweep_auditor_exactness()); }},
      {"5 reward-sequence equivalence", [] { return from_sweep(pb::sweep_equivalence(20, 1, 2, 2)); }},
      {"6 instantaneous/pan composition", [] { return from_sweep(pb::sweep_composition()); }},
      {"7 bound formulas via CLI", bound_formulas},
      {"8 hard-instance regret above local bound", hard_instance_experiment},
      {"9 pinsker and bretagnolle-huber",
       [] { return from_sweeps({pb::sweep_pinsker(1000), pb::sweep_bretagnolle_huber(1000)}); }},
      {"10 bound monotonicity and sqrt(T) scaling", [] { return from_sweep(pb::sweep_monotonicity()); }},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!outcome.pass) ++failures;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " [" << name << "] (" << seconds << " s) "
              << outcome.detail << std::endl;
  }
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : "SOME CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
