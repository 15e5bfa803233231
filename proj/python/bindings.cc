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

// Python bindings. Structured values cross the boundary as JSON text using the
// encodings of privbandit/json_io.h; the privbandit package decodes them.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "privbandit/auditor.h"
#include "privbandit/bounds.h"
#include "privbandit/divergence.h"
#include "privbandit/episode.h"
#include "privbandit/errors.h"
#include "privbandit/experiment.h"
#include "privbandit/json_io.h"
#include "privbandit/mechanism.h"
#include "privbandit/sweeps.h"

namespace py = pybind11;
namespace pb = privbandit;

namespace {

pb::Json parse(const std::string& text, const char* what) { return pb::parse_json(text, what); }

pb::Environment env_of(const std::string& text) {
  return pb::environment_from_json(parse(text, "environment"));
}

pb::Policy policy_of(const std::string& text, std::optional<std::size_t> num_arms) {
  return pb::policy_from_json(parse(text, "policy"), num_arms);
}

pb::ConstantMode constant_of(const py::object& constant) {
  if (py::isinstance<py::float_>(constant) || py::isinstance<py::int_>(constant)) {
    return pb::ConstantMode::custom_value(constant.cast<double>());
  }
  const auto name = constant.cast<std::string>();
  if (name == "proof-constant") return pb::ConstantMode::proof_constant();
  if (name == "rate-only") return pb::ConstantMode::rate_only();
  throw std::invalid_argument("constant must be proof-constant, rate-only or a number");
}

std::string minimax_bound(const std::string& regime_name, std::size_t num_arms, double horizon,
                          double epsilon, double c, const py::object& constant,
                          const std::string& variant) {
  const auto regime = pb::parse_regime(regime_name);
  switch (regime) {
    case pb::Regime::kLocal:
      return pb::to_json(pb::minimax_lb_local(num_arms, horizon, epsilon, constant_of(constant))).dump();
    case pb::Regime::kInstantaneous:
      return pb::to_json(pb::minimax_lb_instantaneous(num_arms, horizon, epsilon,
                                                      constant_of(constant)))
          .dump();
    case pb::Regime::kDp:
      return pb::to_json(pb::minimax_lb_dp(num_arms, horizon, epsilon, c,
                                           pb::parse_dp_variant(variant), constant_of(constant)))
          .dump();
    case pb::Regime::kNonprivateMinimax:
      return pb::to_json(pb::minimax_lb_nonprivate(num_arms, horizon, constant_of(constant))).dump();
    default:
      throw std::invalid_argument("use problem_dependent_bound for " + regime_name);
  }
}

std::string sweep_json(const std::vector<pb::SweepResult>& results) {
  pb::Json out = pb::Json::array();
  for (const auto& r : results) {
    out.push_back({{"name", r.name},
                   {"cells", r.cells},
                   {"failures", r.failures},
                   {"worst", pb::number_to_json(r.worst)},
                   {"worst_cell", r.worst_cell},
                   {"first_failure", r.first_failure},
                   {"seconds", r.seconds},
                   {"passed", r.passed()}});
  }
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "privbandit C++ core";

  py::register_exception<pb::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<pb::CapabilityError>(m, "CapabilityError", PyExc_TypeError);
  py::register_exception<pb::EnumerationBudgetError>(m, "EnumerationBudgetError",
                                                     PyExc_RuntimeError);

  m.def("normalize_environment", [](const std::string& env) { return pb::to_json(env_of(env)).dump(); });
  m.def("normalize_policy",
        [](const std::string& policy, std::optional<std::size_t> num_arms) {
          return pb::to_json(policy_of(policy, num_arms)).dump();
        },
        py::arg("policy"), py::arg("num_arms") = std::nullopt);

  m.def("expected_regret", [](const std::string& env, const std::vector<double>& counts) {
    return pb::expected_regret(env_of(env), counts);
  });
  m.def("run_episode",
        [](const std::string& policy, const std::string& env, std::size_t horizon, std::uint64_t seed) {
          const auto e = env_of(env);
          pb::Rng rng(seed);
          return pb::to_json(pb::run_episode(policy_of(policy, e.num_arms()), e, horizon, rng)).dump();
        });
  m.def("history_probability",
        [](const std::string& policy, const std::string& env, const std::string& history) {
          const auto e = env_of(env);
          const auto p = pb::history_probability(policy_of(policy, e.num_arms()), e,
                                                 pb::history_from_json(parse(history, "history")));
          return py::make_tuple(p.value, p.support_violation);
        });

  m.def("rr_keep_probability", &pb::rr_keep_probability);
  m.def("rr_debias", &pb::rr_debias);
  m.def("corrupt_mean", [](double p, double epsilon) {
    return pb::corrupt_distribution(pb::RewardDistribution::bernoulli(p), epsilon).mean;
  });

  m.def("kl", [](const std::vector<double>& p, const std::vector<double>& q) { return pb::kl(p, q); });
  m.def("bernoulli_kl", &pb::bernoulli_kl);
  m.def("tv_l1", [](const std::vector<double>& p, const std::vector<double>& q) { return pb::tv_l1(p, q); });
  m.def("pinsker_check",
        [](const std::vector<double>& p, const std::vector<double>& q) { return pb::pinsker_check(p, q); });
  m.def("bretagnolle_huber", &pb::bretagnolle_huber);
  m.def("kl_history",
        [](const std::string& policy, const std::string& env1, const std::string& env2,
           std::size_t horizon) {
          const auto e1 = env_of(env1);
          return pb::kl_history(policy_of(policy, e1.num_arms()), e1, env_of(env2), horizon);
        });
  m.def("verify_lemma3",
        [](const std::string& policy, const std::string& env1, const std::string& env2,
           std::size_t horizon) {
          const auto e1 = env_of(env1);
          return pb::to_json(pb::verify_lemma3(policy_of(policy, e1.num_arms()), e1, env_of(env2), horizon))
              .dump();
        });
  m.def("verify_lemma4",
        [](const std::string& mechanism, const std::string& policy, const std::string& env1,
           const std::string& env2, std::size_t horizon) {
          const auto e1 = env_of(env1);
          return pb::to_json(pb::verify_lemma4(pb::mechanism_from_json(parse(mechanism, "mechanism")),
                                               policy_of(policy, e1.num_arms()), e1, env_of(env2),
                                               horizon))
              .dump();
        });

  m.def("minimax_bound", &minimax_bound, py::arg("regime"), py::arg("num_arms"),
        py::arg("horizon"), py::arg("epsilon"), py::arg("c") = 0.0,
        py::arg("constant") = py::str("rate-only"), py::arg("variant") = "appendix-derivation");
  m.def("problem_dependent_bound",
        [](const std::string& env, std::optional<double> epsilon) {
          const auto e = env_of(env);
          return pb::to_json(epsilon ? pb::problem_dependent_lb_local(e, *epsilon)
                                     : pb::problem_dependent_lb_nonprivate(e))
              .dump();
        },
        py::arg("env"), py::arg("epsilon") = std::nullopt);
  m.def("threshold",
        [](std::size_t num_arms, double epsilon, const std::string& regime, double c,
           double lambert_constant) {
          return pb::threshold(num_arms, epsilon, pb::parse_regime(regime), c, lambert_constant);
        },
        py::arg("num_arms"), py::arg("epsilon"), py::arg("regime") = "local", py::arg("c") = 0.0,
        py::arg("lambert_constant") = 1.0);
  m.def("hard_instance_pair",
        [](std::size_t num_arms, double horizon, double epsilon, const std::string& regime, double c) {
          const auto pair = pb::hard_instance_pair(num_arms, horizon, epsilon, pb::parse_regime(regime), c);
          return pb::Json{{"env1", pb::to_json(pair.env1)},
                          {"env2", pb::to_json(pair.env2)},
                          {"gap", pair.gap},
                          {"target_arm", pair.target_arm},
                          {"regime", pb::regime_name(pair.regime)}}
              .dump();
        },
        py::arg("num_arms"), py::arg("horizon"), py::arg("epsilon"), py::arg("regime") = "local",
        py::arg("c") = 0.0);

  m.def("audit_pan_dp",
        [](const std::string& policy, std::size_t num_arms, std::size_t horizon,
           const std::vector<double>& alphabet) {
          return pb::to_json(pb::audit_pan_dp(policy_of(policy, num_arms), alphabet, horizon)).dump();
        });
  m.def("audit_instantaneous_dp",
        [](const std::string& policy, std::size_t num_arms, std::size_t horizon,
           const std::vector<double>& alphabet) {
          return pb::to_json(pb::audit_instantaneous_dp(policy_of(policy, num_arms), alphabet, horizon))
              .dump();
        });
  m.def("audit_local_mechanism",
        [](const std::string& mechanism, const std::vector<double>& alphabet) {
          return pb::to_json(pb::audit_local_mechanism(
                                 pb::mechanism_from_json(parse(mechanism, "mechanism")), alphabet))
              .dump();
        });
  m.def("audit_environment_privacy",
        [](const std::string& policy, const std::string& env1, const std::string& env2,
           std::size_t horizon, std::optional<double> rho) {
          const auto e1 = env_of(env1);
          return pb::to_json(pb::audit_environment_privacy(policy_of(policy, e1.num_arms()), e1,
                                                           env_of(env2), horizon, rho))
              .dump();
        },
        py::arg("policy"), py::arg("env1"), py::arg("env2"), py::arg("horizon"),
        py::arg("rho") = std::nullopt);

  m.def("run_experiment", [](const std::string& config) {
    const auto curve = pb::run_experiment(pb::experiment_config_from_json(parse(config, "config")));
    std::ostringstream csv;
    pb::write_regret_csv(curve, csv);
    return py::make_tuple(csv.str(), curve.final_max_regret());
  });
  m.def("run_sweeps", []() {
    py::gil_scoped_release release;
    return sweep_json(pb::run_all_sweeps());
  });
}
