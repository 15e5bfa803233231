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

// privbandit: simulate | bounds | audit | verify-lemma | sweep
//
// Exit codes: 0 success, 1 a FAIL verdict, 2 usage error, 3 runtime error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "privbandit/auditor.h"
#include "privbandit/bounds.h"
#include "privbandit/divergence.h"
#include "privbandit/errors.h"
#include "privbandit/experiment.h"
#include "privbandit/json_io.h"
#include "privbandit/mechanism.h"
#include "privbandit/policy.h"
#include "privbandit/sweeps.h"

namespace pb = privbandit;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string format_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

pb::ConstantMode parse_constant(const std::string& s) {
  if (s == "proof-constant") return pb::ConstantMode::proof_constant();
  if (s == "rate-only") return pb::ConstantMode::rate_only();
  try {
    std::size_t used = 0;
    const double c = std::stod(s, &used);
    if (used == s.size()) return pb::ConstantMode::custom_value(c);
  } catch (const std::exception&) {
  }
  throw UsageError("--constant must be proof-constant, rate-only or a number");
}

pb::Mechanism make_mechanism(const std::string& kind, double epsilon) {
  if (kind == "rr") return pb::Mechanism::randomized_response(epsilon);
  if (kind == "laplace") return pb::Mechanism::laplace(epsilon);
  if (kind == "identity") return pb::Mechanism::identity();
  throw UsageError("unknown mechanism '" + kind + "'");
}

// Options shared by every subcommand that needs a policy.
struct PolicyOptions {
  std::string kind = "softmax-empirical-mean";
  std::string config;
  double beta = 1.0;
  double prior = pb::Policy::kDefaultPriorMean;
  double exploration = pb::Policy::kDefaultExploration;
  std::string mechanism = "rr";
  double epsilon = 1.0;
  std::vector<double> schedule;

  void add_to(CLI::App* app) {
    app->add_option("--policy", kind, "uniform | softmax-empirical-mean | ucb1 | ldp-softmax | "
                                      "ldp-ucb | idp-noisy-ucb");
    app->add_option("--policy-config", config, "JSON file with a policy object");
    app->add_option("--beta", beta, "softmax inverse temperature");
    app->add_option("--prior-mean", prior, "softmax mean for unpulled arms");
    app->add_option("--exploration", exploration, "UCB exploration constant");
    app->add_option("--mechanism", mechanism, "rr | laplace | identity");
    app->add_option("--epsilon", epsilon, "privacy level");
    app->add_option("--epsilon-schedule", schedule, "per-step budgets for idp-noisy-ucb")
        ->delimiter(',');
  }

  pb::Policy build(std::size_t num_arms) const {
    if (!config.empty()) return pb::policy_from_json(pb::read_json_file(config), num_arms);
    pb::Json j = {{"kind", kind},          {"num_arms", num_arms},
                  {"beta", beta},          {"prior_mean", prior},
                  {"exploration", exploration}};
    if (kind == "ldp-softmax" || kind == "ldp-ucb") {
      j["mechanism"] = pb::to_json(make_mechanism(mechanism, epsilon));
    }
    if (kind == "idp-noisy-ucb") {
      pb::Json s = pb::Json::array();
      for (double e : schedule.empty() ? std::vector<double>{epsilon} : schedule) {
        s.push_back(pb::number_to_json(e));
      }
      j["epsilon_schedule"] = s;
    }
    return pb::policy_from_json(j, num_arms);
  }
};

pb::Environment environment_from_flag(const std::string& value, const std::string& name) {
  if (value.empty()) throw UsageError(name + " is required");
  if (value.find_first_not_of("0123456789.,eE+- ") == std::string::npos) {
    std::vector<double> means;
    std::stringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) means.push_back(std::stod(item));
    return pb::Environment::bernoulli(means);
  }
  return pb::environment_from_json(pb::read_json_file(value), name);
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  PolicyOptions policy;
  std::string config;
  std::vector<std::string> environments;
  std::string hard_instance;
  std::size_t num_arms = 2;
  double lipschitz = 0.0;
  std::size_t horizon = 1000;
  std::size_t replications = 10;
  std::uint64_t seed = 0;
  std::string output;
  std::size_t record_every = 0;
  std::size_t workers = 0;
  std::vector<std::string> overlays;
};

int run_simulate(const SimulateOptions& o) {
  pb::ExperimentConfig config;
  if (!o.config.empty()) {
    config = pb::experiment_config_from_json(pb::read_json_file(o.config));
    if (!o.output.empty()) config.output_path = o.output;
  } else {
    for (const auto& e : o.environments) {
      config.environments.push_back(environment_from_flag(e, "--env"));
    }
    std::size_t k = o.num_arms;
    if (!o.hard_instance.empty()) {
      pb::HardInstanceRequest h;
      h.regime = pb::parse_regime(o.hard_instance);
      h.num_arms = o.num_arms;
      h.epsilon = o.policy.epsilon;
      h.lipschitz_budget = o.lipschitz;
      config.hard_instance = h;
    } else if (!config.environments.empty()) {
      k = config.environments.front().num_arms();
    }
    config.policy = o.policy.build(k);
    config.horizon = o.horizon;
    config.replications = o.replications;
    config.master_seed = o.seed;
    config.output_path = o.output;
    config.record_every = o.record_every;
    config.workers = o.workers;
    for (const auto& r : o.overlays) {
      pb::BoundRequest b;
      b.regime = pb::parse_regime(r);
      b.epsilon = o.policy.epsilon;
      b.lipschitz_budget = o.lipschitz;
      config.overlays.push_back(b);
    }
    config.validate();
  }
  const auto curve = pb::run_experiment(config);
  if (config.output_path.empty()) {
    pb::write_regret_csv(curve, std::cout);
    return 0;
  }
  pb::Json summary = {{"output", config.output_path},
                      {"horizon", config.horizon},
                      {"replications", config.replications},
                      {"policy", pb::to_json(*config.policy)},
                      {"max_regret", curve.final_max_regret()}};
  pb::Json finals = pb::Json::array();
  for (const auto& m : curve.mean_regret) finals.push_back(m.back());
  summary["final_mean_regret"] = finals;
  pb::Json overlays = pb::Json::array();
  for (const auto& b : curve.overlays) overlays.push_back(pb::to_json(b));
  summary["overlays"] = overlays;
  std::cout << summary.dump(2) << "\n";
  return 0;
}

// ------------------------------------------------------------------ bounds

struct BoundsOptions {
  std::string regime = "local";
  std::string quantity = "bound";
  std::size_t num_arms = 2;
  double horizon = 10000;
  double epsilon = 1.0;
  double lipschitz = 0.0;
  double lambert = 1.0;
  std::string constant;
  std::string variant = "appendix-derivation";
  std::string env;
  std::string format = "csv";
};

int run_bounds(const BoundsOptions& o) {
  const pb::Regime regime = pb::parse_regime(o.regime);
  const pb::DpVariant variant = pb::parse_dp_variant(o.variant);
  if (o.quantity == "threshold" || o.quantity == "gap") {
    const double v =
        o.quantity == "threshold"
            ? pb::threshold(o.num_arms, o.epsilon, regime, o.lipschitz, o.lambert)
            : pb::hard_instance_gap(o.num_arms, o.horizon, o.epsilon, regime, o.lipschitz,
                                    o.lambert);
    if (o.format == "json") {
      std::cout << pb::Json{{"regime", o.regime}, {"quantity", o.quantity}, {"K", o.num_arms},
                            {"epsilon", pb::number_to_json(o.epsilon)},
                            {"value", pb::number_to_json(v)}}
                       .dump(2)
                << "\n";
    } else if (o.format == "value") {
      std::cout << format_value(v) << "\n";
    } else {
      std::cout << "regime,K,T,epsilon,c,variant,value\n"
                << o.regime << ',' << o.num_arms << ',' << format_value(o.horizon) << ','
                << format_value(o.epsilon) << ',' << format_value(o.lipschitz) << ','
                << o.quantity << ',' << format_value(v) << "\n";
    }
    return 0;
  }
  if (o.quantity != "bound") throw UsageError("--quantity must be bound, threshold or gap");

  auto constant_or = [&](pb::ConstantMode fallback) {
    return o.constant.empty() ? fallback : parse_constant(o.constant);
  };
  pb::BoundSpec spec;
  switch (regime) {
    case pb::Regime::kLocal:
      spec = pb::minimax_lb_local(o.num_arms, o.horizon, o.epsilon,
                                  constant_or(pb::ConstantMode::rate_only()));
      break;
    case pb::Regime::kInstantaneous:
      spec = pb::minimax_lb_instantaneous(o.num_arms, o.horizon, o.epsilon,
                                          constant_or(pb::ConstantMode::rate_only()));
      break;
    case pb::Regime::kDp:
      spec = pb::minimax_lb_dp(o.num_arms, o.horizon, o.epsilon, o.lipschitz, variant,
                               constant_or(pb::ConstantMode::proof_constant()));
      break;
    case pb::Regime::kNonprivateMinimax:
      spec = pb::minimax_lb_nonprivate(o.num_arms, o.horizon,
                                       constant_or(pb::ConstantMode::rate_only()));
      break;
    case pb::Regime::kLocalProblemDependent:
      spec = pb::problem_dependent_lb_local(environment_from_flag(o.env, "--env"), o.epsilon);
      break;
    case pb::Regime::kNonprivateProblemDependent:
      spec = pb::problem_dependent_lb_nonprivate(environment_from_flag(o.env, "--env"));
      break;
  }
  for (const auto& w : spec.warnings) std::cerr << "warning: " << w << "\n";
  if (o.format == "json") {
    std::cout << pb::to_json(spec).dump(2) << "\n";
  } else if (o.format == "value") {
    std::cout << format_value(spec.value) << "\n";
  } else {
    std::cout << "regime,K,T,epsilon,c,variant,value\n"
              << pb::regime_name(spec.regime) << ',' << spec.num_arms << ','
              << format_value(spec.horizon) << ',' << format_value(spec.epsilon) << ','
              << format_value(spec.lipschitz_budget) << ','
              << (spec.variant.empty() ? spec.constant.name() : spec.variant) << ','
              << format_value(spec.value) << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------- audit

struct AuditOptions {
  PolicyOptions policy;
  std::string definition = "pan-dp";
  std::size_t num_arms = 2;
  std::size_t horizon = 2;
  std::vector<double> alphabet{0.0, 1.0};
  std::string env1;
  std::string env2;
  std::optional<double> rho;
  std::optional<double> claim;
  std::uint64_t cap = pb::kDefaultAuditCap;
};

int run_audit(const AuditOptions& o) {
  const pb::PrivacyDefinition definition = pb::parse_definition(o.definition);
  pb::AuditReport report;
  switch (definition) {
    case pb::PrivacyDefinition::kLocalMechanism:
      report = pb::audit_local_mechanism(make_mechanism(o.policy.mechanism, o.policy.epsilon),
                                         o.alphabet);
      break;
    case pb::PrivacyDefinition::kPanDp:
      report = pb::audit_pan_dp(o.policy.build(o.num_arms), o.alphabet, o.horizon, o.cap);
      break;
    case pb::PrivacyDefinition::kInstantaneousDp:
      report = pb::audit_instantaneous_dp(o.policy.build(o.num_arms), o.alphabet, o.horizon,
                                          o.cap);
      break;
    case pb::PrivacyDefinition::kEnvironment: {
      const auto e1 = environment_from_flag(o.env1, "--env1");
      const auto e2 = environment_from_flag(o.env2, "--env2");
      report = pb::audit_environment_privacy(o.policy.build(e1.num_arms()), e1, e2, o.horizon,
                                             o.rho, o.cap);
      break;
    }
  }
  if (o.claim) report.epsilon_claimed = *o.claim;
  pb::Json j = pb::to_json(report);
  bool pass = true;
  if (!std::isnan(report.epsilon_claimed)) {
    pass = std::isinf(report.epsilon_claimed) ||
           report.epsilon_measured <= report.epsilon_claimed + 1e-9;
    j["verdict"] = pass ? "PASS" : "FAIL";
  }
  std::cout << j.dump(2) << "\n";
  return pass ? 0 : kExitFail;
}

// ------------------------------------------------------------ verify-lemma

struct LemmaOptions {
  std::string id;
  std::vector<std::size_t> arms;
  std::vector<std::size_t> horizons;
  std::vector<double> betas;
  std::vector<double> epsilons;
  std::vector<double> ratio_bounds;
  double grid = 0.25;
  std::size_t count = 0;
  std::uint64_t seed = 1;
  bool json = false;
};

void print_sweep(const pb::SweepResult& r, bool equality, std::ostream& out) {
  out << (r.passed() ? "PASS" : "FAIL") << ", ";
  if (equality) {
    out << "max |slack| " << (r.worst < 1e-9 ? "< 1e-9" : "= " + format_value(r.worst));
  } else {
    out << "min slack = " << format_value(r.worst);
  }
  out << " (" << r.name << ", cells=" << r.cells << ", failures=" << r.failures
      << ", seconds=" << format_value(r.seconds) << ")\n";
  if (!r.passed() && !r.first_failure.empty()) out << "first failure: " << r.first_failure << "\n";
}

pb::Json sweep_json(const pb::SweepResult& r) {
  return {{"name", r.name},       {"cells", r.cells},
          {"failures", r.failures}, {"worst", pb::number_to_json(r.worst)},
          {"worst_cell", r.worst_cell}, {"first_failure", r.first_failure},
          {"seconds", r.seconds},   {"verdict", r.passed() ? "PASS" : "FAIL"}};
}

int run_verify_lemma(const LemmaOptions& o) {
  pb::GridSweepOptions grid;
  if (!o.arms.empty()) grid.arms = o.arms;
  if (!o.horizons.empty()) grid.horizons = o.horizons;
  if (!o.betas.empty()) grid.betas = o.betas;
  if (!o.epsilons.empty()) grid.epsilons = o.epsilons;
  grid.grid_step = o.grid;

  pb::SweepResult r;
  bool equality = false;
  if (o.id == "3") {
    r = pb::sweep_lemma3(grid);
    equality = true;
  } else if (o.id == "4") {
    r = pb::sweep_lemma4(grid);
  } else if (o.id == "6") {
    r = pb::sweep_lemma6(o.ratio_bounds.empty() ? std::vector<double>{0.1, 0.5, 1.0}
                                                : o.ratio_bounds,
                         o.count ? o.count : 1000, o.seed);
  } else if (o.id == "equivalence") {
    r = pb::sweep_equivalence(o.count ? o.count : 20, o.seed,
                              o.arms.empty() ? 2 : o.arms.front(),
                              o.horizons.empty() ? 2 : o.horizons.front());
    equality = true;
  } else if (o.id == "composition") {
    r = pb::sweep_composition(o.arms.empty() ? std::vector<std::size_t>{2, 3} : o.arms,
                              o.horizons.empty() ? std::vector<std::size_t>{1, 2, 3}
                                                 : o.horizons);
  } else if (o.id == "pinsker") {
    r = pb::sweep_pinsker(o.count ? o.count : 1000, o.seed);
  } else if (o.id == "bretagnolle-huber") {
    r = pb::sweep_bretagnolle_huber(o.count ? o.count : 1000, o.seed);
  } else {
    throw UsageError("unknown lemma id '" + o.id +
                     "' (expected 3, 4, 6, equivalence, composition, pinsker, bretagnolle-huber)");
  }
  if (o.json) {
    std::cout << sweep_json(r).dump(2) << "\n";
  } else {
    print_sweep(r, equality, std::cout);
  }
  return r.passed() ? 0 : kExitFail;
}

// ------------------------------------------------------------------- sweep

int run_sweep(const std::vector<std::string>& only, bool json) {
  std::vector<pb::SweepResult> results;
  auto wanted = [&](const std::string& name) {
    return only.empty() || std::find(only.begin(), only.end(), name) != only.end();
  };
  if (wanted("lemma3")) results.push_back(pb::sweep_lemma3());
  if (wanted("lemma4")) results.push_back(pb::sweep_lemma4());
  if (wanted("lemma6")) results.push_back(pb::sweep_lemma6());
  if (wanted("pinsker")) results.push_back(pb::sweep_pinsker());
  if (wanted("bretagnolle-huber")) results.push_back(pb::sweep_bretagnolle_huber());
  if (wanted("auditor-exactness")) results.push_back(pb::sweep_auditor_exactness());
  if (wanted("equivalence")) results.push_back(pb::sweep_equivalence());
  if (wanted("composition")) results.push_back(pb::sweep_composition());
  if (wanted("post-processing")) results.push_back(pb::sweep_post_processing());
  if (wanted("monotonicity")) results.push_back(pb::sweep_monotonicity());
  if (results.empty()) throw UsageError("--only selected no known sweep");

  bool all = true;
  pb::Json list = pb::Json::array();
  for (const auto& r : results) {
    all = all && r.passed();
    if (json) {
      list.push_back(sweep_json(r));
    } else {
      print_sweep(r, r.name == "lemma3" || r.name == "equivalence", std::cout);
    }
  }
  if (json) {
    std::cout << list.dump(2) << "\n";
  } else {
    std::cout << (all ? "ALL PASS" : "SOME FAILED") << "\n";
  }
  return all ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Private multi-armed bandits: simulation, lower bounds and privacy audits"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "run seeded regret experiments");
  sim.policy.add_to(simulate);
  simulate->add_option("--config", sim.config, "experiment JSON file");
  simulate->add_option("--env", sim.environments,
                       "Bernoulli means (comma separated) or environment JSON file");
  simulate->add_option("--hard-instance", sim.hard_instance, "regime of the hard-instance pair");
  simulate->add_option("--K", sim.num_arms, "number of arms for hard instances");
  simulate->add_option("--c", sim.lipschitz, "Lipschitz budget (dp regime)");
  simulate->add_option("--T", sim.horizon, "horizon");
  simulate->add_option("--R", sim.replications, "replications");
  simulate->add_option("--seed", sim.seed, "master seed");
  simulate->add_option("--output", sim.output, "CSV path (stdout when omitted)");
  simulate->add_option("--record-every", sim.record_every, "time-grid stride");
  simulate->add_option("--workers", sim.workers, "worker threads (default PRIVBANDIT_WORKERS)");
  simulate->add_option("--overlay", sim.overlays, "lower-bound regime to evaluate at T");

  BoundsOptions bnd;
  auto* bounds = app.add_subcommand("bounds", "evaluate regret lower bounds");
  bounds->add_option("--regime", bnd.regime,
                     "local | instantaneous | dp | nonprivate-minimax | "
                     "nonprivate-problem-dep | local-problem-dep");
  bounds->add_option("--quantity", bnd.quantity, "bound | threshold | gap");
  bounds->add_option("--K", bnd.num_arms, "number of arms");
  bounds->add_option("--T", bnd.horizon, "horizon");
  bounds->add_option("--epsilon", bnd.epsilon, "privacy level");
  bounds->add_option("--c", bnd.lipschitz, "Lipschitz budget (dp regime)");
  bounds->add_option("--lambert-constant", bnd.lambert, "instantaneous threshold constant");
  bounds->add_option("--constant", bnd.constant, "proof-constant | rate-only | <number>");
  bounds->add_option("--variant", bnd.variant, "appendix-derivation | theorem-text");
  bounds->add_option("--env", bnd.env, "Bernoulli means or environment JSON (problem-dep)");
  bounds->add_option("--format", bnd.format, "csv | json | value");

  AuditOptions aud;
  auto* audit = app.add_subcommand("audit", "measure privacy by exhaustive enumeration");
  aud.policy.add_to(audit);
  audit->add_option("--definition", aud.definition,
                    "pan-dp | instantaneous-dp | local-mechanism | environment");
  audit->add_option("--K", aud.num_arms, "number of arms");
  audit->add_option("--T", aud.horizon, "horizon");
  audit->add_option("--alphabet", aud.alphabet, "reward alphabet")->delimiter(',');
  audit->add_option("--env1", aud.env1, "first environment (environment audit)");
  audit->add_option("--env2", aud.env2, "second environment (environment audit)");
  audit->add_option("--rho", aud.rho, "environment distance (default L-inf on means)");
  audit->add_option("--claim", aud.claim, "claimed epsilon to check (overrides the policy's own)");
  audit->add_option("--cap", aud.cap, "enumeration budget");

  LemmaOptions lem;
  auto* verify = app.add_subcommand("verify-lemma", "run one verification sweep");
  verify->add_option("lemma", lem.id,
                     "3 | 4 | 6 | equivalence | composition | pinsker | bretagnolle-huber")
      ->required();
  verify->add_option("--K", lem.arms, "arm counts")->delimiter(',');
  verify->add_option("--T", lem.horizons, "horizons")->delimiter(',');
  verify->add_option("--beta", lem.betas, "softmax inverse temperatures")->delimiter(',');
  verify->add_option("--epsilon", lem.epsilons, "randomized-response levels")->delimiter(',');
  verify->add_option("--bound", lem.ratio_bounds, "ratio bounds eps + c (lemma 6)")
      ->delimiter(',');
  verify->add_option("--grid", lem.grid, "Bernoulli grid step");
  verify->add_option("--count", lem.count, "random instances");
  verify->add_option("--seed", lem.seed, "seed");
  verify->add_flag("--json", lem.json, "JSON output");

  std::vector<std::string> only;
  bool sweep_as_json = false;
  auto* sweep = app.add_subcommand("sweep", "run every verification sweep");
  sweep->add_option("--only", only, "subset of sweeps")->delimiter(',');
  sweep->add_flag("--json", sweep_as_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (bounds->parsed()) return run_bounds(bnd);
    if (audit->parsed()) return run_audit(aud);
    if (verify->parsed()) return run_verify_lemma(lem);
    if (sweep->parsed()) return run_sweep(only, sweep_as_json);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pb::DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pb::CapabilityError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
