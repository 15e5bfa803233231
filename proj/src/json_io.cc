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

#include "privbandit/json_io.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "privbandit/errors.h"

namespace privbandit {
namespace {

const Json& require(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(path + "." + key, "missing field");
  return *it;
}

std::vector<double> numbers_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(number_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::size_t count_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ConfigError(path, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

Json numbers_to_json(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(number_to_json(v));
  return out;
}

// Re-throws library validation errors as ConfigError at `path`.
template <typename F>
auto at_path(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

}  // namespace

Json number_to_json(double value) {
  if (std::isnan(value)) return nullptr;
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

double number_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    if (s == "-inf" || s == "-infinity") return -std::numeric_limits<double>::infinity();
  }
  throw ConfigError(path, "expected a number");
}

Json to_json(const RewardDistribution& f) {
  return {{"support", numbers_to_json(f.support())}, {"probs", numbers_to_json(f.probs())}};
}

Json to_json(const Environment& env) {
  Json arms = Json::array();
  for (const auto& f : env.arms()) arms.push_back(to_json(f));
  return {{"arms", arms}};
}

Json to_json(const History& history) {
  Json steps = Json::array();
  for (const auto& s : history.steps()) {
    Json step = {s.action, number_to_json(s.reward)};
    if (s.privatized_reward) step.push_back(number_to_json(*s.privatized_reward));
    steps.push_back(step);
  }
  return steps;
}

Json to_json(const Mechanism& mechanism) {
  Json j = {{"kind", mechanism.name()}, {"epsilon", number_to_json(mechanism.epsilon())}};
  if (mechanism.kind() == MechanismKind::kLaplace) j["sensitivity"] = mechanism.sensitivity();
  return j;
}

Json to_json(const Policy& policy) {
  Json j = {{"kind", policy.name()}, {"num_arms", policy.num_arms()}};
  switch (policy.kind()) {
    case PolicyKind::kSoftmax:
    case PolicyKind::kLdpSoftmax:
      j["beta"] = policy.beta();
      j["prior_mean"] = policy.prior_mean();
      break;
    case PolicyKind::kUcb1:
    case PolicyKind::kLdpUcb:
      j["exploration"] = policy.exploration();
      break;
    case PolicyKind::kIdpNoisyUcb:
      j["exploration"] = policy.exploration();
      j["epsilon_schedule"] = numbers_to_json(policy.epsilon_schedule());
      break;
    case PolicyKind::kUniform:
      break;
  }
  if (policy.mechanism()) j["mechanism"] = to_json(*policy.mechanism());
  j["auditable"] = policy.auditable();
  return j;
}

Json to_json(const DecompositionReport& report) {
  Json info = Json::object();
  for (const auto& [k, v] : report.info) info[k] = number_to_json(v);
  return {{"lemma", report.lemma},
          {"relation", report.relation},
          {"lhs", number_to_json(report.lhs)},
          {"rhs", number_to_json(report.rhs)},
          {"policy_term", number_to_json(report.policy_term)},
          {"per_arm_terms", numbers_to_json(report.per_arm_terms)},
          {"slack", number_to_json(report.slack)},
          {"verdict", verdict_name(report.verdict)},
          {"witness", report.witness},
          {"info", info}};
}

Json to_json(const AuditReport& report) {
  Json witness = nullptr;
  if (report.witness.found) {
    witness = {{"actions", report.witness.actions},
               {"data", numbers_to_json(report.witness.data)},
               {"neighbour_data", numbers_to_json(report.witness.neighbour_data)}};
    if (report.witness.output) witness["output"] = number_to_json(*report.witness.output);
  }
  Json j = {{"definition", definition_name(report.definition)},
            {"epsilon_claimed", number_to_json(report.epsilon_claimed)},
            {"epsilon_measured", number_to_json(report.epsilon_measured)},
            {"witness", witness},
            {"horizon", report.horizon},
            {"num_arms", report.num_arms},
            {"alphabet", numbers_to_json(report.alphabet)}};
  if (report.definition == PrivacyDefinition::kEnvironment) {
    j["rho"] = number_to_json(report.rho);
    j["identical_environments"] = report.identical_environments;
  }
  return j;
}

Json to_json(const BoundSpec& bound) {
  return {{"regime", regime_name(bound.regime)},
          {"tag", bound.tag},
          {"K", bound.num_arms},
          {"T", number_to_json(bound.horizon)},
          {"epsilon", number_to_json(bound.epsilon)},
          {"c", number_to_json(bound.lipschitz_budget)},
          {"constant", bound.constant.name()},
          {"variant", bound.variant},
          {"value", number_to_json(bound.value)},
          {"warnings", bound.warnings},
          {"bounded_reward_precondition", bound.bounded_reward_precondition}};
}

Environment environment_from_json(const Json& j, const std::string& path) {
  if (j.is_object() && j.contains("bernoulli")) {
    const auto means = numbers_from_json(j["bernoulli"], path + ".bernoulli");
    return at_path(path + ".bernoulli", [&] { return Environment::bernoulli(means); });
  }
  const Json& arms = require(j, "arms", path);
  if (!arms.is_array() || arms.empty()) {
    throw ConfigError(path + ".arms", "expected a nonempty array");
  }
  std::vector<RewardDistribution> out;
  for (std::size_t a = 0; a < arms.size(); ++a) {
    const std::string arm_path = path + ".arms[" + std::to_string(a) + "]";
    auto support = numbers_from_json(require(arms[a], "support", arm_path), arm_path + ".support");
    auto probs = numbers_from_json(require(arms[a], "probs", arm_path), arm_path + ".probs");
    out.push_back(at_path(arm_path, [&] { return RewardDistribution(support, probs); }));
  }
  return at_path(path, [&] { return Environment(std::move(out)); });
}

History history_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of steps");
  History history;
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string step_path = path + "[" + std::to_string(t) + "]";
    const Json& step_json = j[t];
    if (!step_json.is_array() || step_json.size() < 2 || step_json.size() > 3) {
      throw ConfigError(step_path, "expected [action, reward] or [action, reward, privatized]");
    }
    HistoryStep step;
    step.action = count_from_json(step_json[0], step_path + "[0]");
    step.reward = number_from_json(step_json[1], step_path + "[1]");
    if (step_json.size() == 3) step.privatized_reward = number_from_json(step_json[2], step_path + "[2]");
    history.push_back(step);
  }
  return history;
}

Mechanism mechanism_from_json(const Json& j, const std::string& path) {
  const Json& kind_json = require(j, "kind", path);
  if (!kind_json.is_string()) throw ConfigError(path + ".kind", "expected a string");
  const auto kind = kind_json.get<std::string>();
  if (kind == "identity") return Mechanism::identity();
  const double epsilon = number_from_json(require(j, "epsilon", path), path + ".epsilon");
  if (kind == "rr" || kind == "randomized-response") {
    return at_path(path + ".epsilon", [&] { return Mechanism::randomized_response(epsilon); });
  }
  if (kind == "laplace") {
    const double sensitivity =
        j.contains("sensitivity") ? number_from_json(j["sensitivity"], path + ".sensitivity") : 1.0;
    return at_path(path, [&] { return Mechanism::laplace(epsilon, sensitivity); });
  }
  throw ConfigError(path + ".kind", "unknown mechanism '" + kind + "'");
}

Policy policy_from_json(const Json& j, std::optional<std::size_t> num_arms,
                        const std::string& path) {
  const Json& kind_json = require(j, "kind", path);
  if (!kind_json.is_string()) throw ConfigError(path + ".kind", "expected a string");
  const auto kind = kind_json.get<std::string>();
  std::size_t k = 0;
  if (j.contains("num_arms")) {
    k = count_from_json(j["num_arms"], path + ".num_arms");
  } else if (num_arms) {
    k = *num_arms;
  } else {
    throw ConfigError(path + ".num_arms", "missing field");
  }
  auto number_or = [&](const char* key, double fallback) {
    return j.contains(key) ? number_from_json(j[key], path + "." + key) : fallback;
  };
  const double beta = number_or("beta", 1.0);
  const double prior = number_or("prior_mean", Policy::kDefaultPriorMean);
  const double exploration = number_or("exploration", Policy::kDefaultExploration);

  return at_path(path, [&]() -> Policy {
    if (kind == "uniform") return Policy::uniform(k);
    if (kind == "softmax" || kind == "softmax-empirical-mean") {
      return Policy::softmax(k, beta, prior);
    }
    if (kind == "ucb1") return Policy::ucb1(k, exploration);
    if (kind == "ldp-softmax" || kind == "ldp-ucb") {
      if (!j.contains("mechanism")) throw ConfigError(path + ".mechanism", "missing field");
      const Mechanism m = mechanism_from_json(j["mechanism"], path + ".mechanism");
      const Policy base =
          kind == "ldp-softmax" ? Policy::softmax(k, beta, prior) : Policy::ucb1(k, exploration);
      return ldp_pipeline(base, m);
    }
    if (kind == "idp-noisy-ucb") {
      if (!j.contains("epsilon_schedule")) {
        throw ConfigError(path + ".epsilon_schedule", "missing field");
      }
      return idp_noisy_ucb(
          k, numbers_from_json(j["epsilon_schedule"], path + ".epsilon_schedule"), exploration);
    }
    throw ConfigError(path + ".kind", "unknown policy '" + kind + "'");
  });
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(source, e.what());
  }
}

Json read_json_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw ConfigError(filename, "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str(), filename);
}

}  // namespace privbandit
