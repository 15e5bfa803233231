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

#include "privbandit/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <stdexcept>
#include <thread>

#include "privbandit/episode.h"
#include "privbandit/errors.h"
#include "privbandit/random.h"

namespace privbandit {
namespace {

std::vector<std::size_t> make_grid(std::size_t horizon, std::size_t every) {
  if (every == 0) every = std::max<std::size_t>(1, horizon / 100);
  std::vector<std::size_t> grid;
  for (std::size_t t = every; t < horizon; t += every) grid.push_back(t);
  grid.push_back(horizon);
  return grid;
}

BoundSpec evaluate_overlay(const BoundRequest& r, std::size_t num_arms, double horizon) {
  switch (r.regime) {
    case Regime::kLocal:
      return minimax_lb_local(num_arms, horizon, r.epsilon, r.constant);
    case Regime::kInstantaneous:
      return minimax_lb_instantaneous(num_arms, horizon, r.epsilon, r.constant);
    case Regime::kDp:
      return minimax_lb_dp(num_arms, horizon, r.epsilon, r.lipschitz_budget, r.variant,
                           r.constant);
    case Regime::kNonprivateMinimax:
      return minimax_lb_nonprivate(num_arms, horizon, r.constant);
    default:
      throw ConfigError("overlays", "problem-dependent regimes need an environment, not an overlay");
  }
}

std::uint64_t uint_field(const Json& j, const char* key, const std::string& path) {
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(path + "." + key, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

Regime regime_field(const Json& j, const std::string& path) {
  if (!j.contains("regime") || !j["regime"].is_string()) {
    throw ConfigError(path + ".regime", "expected a regime name");
  }
  try {
    return parse_regime(j["regime"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ".regime", e.what());
  }
}

ConstantMode constant_field(const Json& j, const std::string& path) {
  if (!j.contains("constant")) return ConstantMode::proof_constant();
  const Json& c = j["constant"];
  if (c.is_number()) return ConstantMode::custom_value(c.get<double>());
  if (c.is_string()) {
    const auto s = c.get<std::string>();
    if (s == "proof-constant") return ConstantMode::proof_constant();
    if (s == "rate-only") return ConstantMode::rate_only();
  }
  throw ConfigError(path + ".constant", "expected proof-constant, rate-only or a number");
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!policy) throw ConfigError("policy", "missing policy");
  if (horizon == 0) throw ConfigError("horizon", "must be >= 1");
  if (replications == 0) throw ConfigError("replications", "must be >= 1");
  if (environments.empty() == !hard_instance.has_value()) {
    throw ConfigError("environments", "give either environments or hard_instance");
  }
  for (std::size_t e = 0; e < environments.size(); ++e) {
    if (environments[e].num_arms() != policy->num_arms()) {
      throw ConfigError("environments[" + std::to_string(e) + "]",
                        "number of arms differs from the policy");
    }
  }
  if (hard_instance && hard_instance->num_arms != policy->num_arms()) {
    throw ConfigError("hard_instance.K", "number of arms differs from the policy");
  }
}

ExperimentConfig experiment_config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config", "expected an object");
  ExperimentConfig config;
  if (j.contains("environments")) {
    const Json& envs = j["environments"];
    if (!envs.is_array()) throw ConfigError("environments", "expected an array");
    for (std::size_t e = 0; e < envs.size(); ++e) {
      config.environments.push_back(
          environment_from_json(envs[e], "environments[" + std::to_string(e) + "]"));
    }
  }
  if (j.contains("environment")) {
    config.environments.push_back(environment_from_json(j["environment"], "environment"));
  }
  if (j.contains("hard_instance")) {
    const Json& h = j["hard_instance"];
    HardInstanceRequest req;
    req.regime = regime_field(h, "hard_instance");
    if (h.contains("K")) req.num_arms = uint_field(h, "K", "hard_instance");
    if (h.contains("epsilon")) req.epsilon = number_from_json(h["epsilon"], "hard_instance.epsilon");
    if (h.contains("c")) req.lipschitz_budget = number_from_json(h["c"], "hard_instance.c");
    if (h.contains("lambert_constant")) {
      req.lambert_constant = number_from_json(h["lambert_constant"], "hard_instance.lambert_constant");
    }
    config.hard_instance = req;
  }
  std::optional<std::size_t> arms;
  if (!config.environments.empty()) arms = config.environments.front().num_arms();
  if (config.hard_instance) arms = config.hard_instance->num_arms;
  if (!j.contains("policy")) throw ConfigError("policy", "missing field");
  config.policy = policy_from_json(j["policy"], arms, "policy");

  if (!j.contains("horizon")) throw ConfigError("horizon", "missing field");
  config.horizon = uint_field(j, "horizon", "config");
  if (j.contains("replications")) config.replications = uint_field(j, "replications", "config");
  if (j.contains("seed")) config.master_seed = uint_field(j, "seed", "config");
  if (j.contains("record_every")) config.record_every = uint_field(j, "record_every", "config");
  if (j.contains("workers")) config.workers = uint_field(j, "workers", "config");
  if (j.contains("output")) {
    if (!j["output"].is_string()) throw ConfigError("output", "expected a path");
    config.output_path = j["output"].get<std::string>();
  }
  if (j.contains("overlays")) {
    const Json& list = j["overlays"];
    if (!list.is_array()) throw ConfigError("overlays", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "overlays[" + std::to_string(i) + "]";
      BoundRequest r;
      r.regime = regime_field(list[i], path);
      if (list[i].contains("epsilon")) r.epsilon = number_from_json(list[i]["epsilon"], path + ".epsilon");
      if (list[i].contains("c")) r.lipschitz_budget = number_from_json(list[i]["c"], path + ".c");
      r.constant = constant_field(list[i], path);
      if (list[i].contains("variant")) {
        try {
          r.variant = parse_dp_variant(list[i]["variant"].get<std::string>());
        } catch (const std::exception& e) {
          throw ConfigError(path + ".variant", e.what());
        }
      }
      config.overlays.push_back(r);
    }
  }
  config.validate();
  return config;
}

double RegretCurve::final_max_regret() const {
  return max_over_environments.empty() ? 0.0 : max_over_environments.back();
}

std::vector<double> cumulative_pseudo_regret(const Environment& env, const History& history) {
  const auto gaps = env.gaps();
  std::vector<double> out(history.size());
  double total = 0.0;
  for (std::size_t t = 0; t < history.size(); ++t) {
    total += gaps.at(history[t].action);
    out[t] = total;
  }
  return out;
}

std::size_t default_worker_count() {
  const char* value = std::getenv("PRIVBANDIT_WORKERS");
  if (value == nullptr) return 1;
  char* end = nullptr;
  const long parsed = std::strtol(value, &end, 10);
  if (end == value || *end != '\0' || parsed < 1) {
    throw ConfigError("PRIVBANDIT_WORKERS", "expected a positive integer");
  }
  return static_cast<std::size_t>(parsed);
}

RegretCurve run_experiment(const ExperimentConfig& config) {
  config.validate();
  RegretCurve curve;
  curve.replications = config.replications;
  if (config.hard_instance) {
    const auto& h = *config.hard_instance;
    const auto pair = hard_instance_pair(h.num_arms, static_cast<double>(config.horizon),
                                         h.epsilon, h.regime, h.lipschitz_budget,
                                         h.lambert_constant);
    curve.environments = {pair.env1, pair.env2};
  } else {
    curve.environments = config.environments;
  }
  curve.time_grid = make_grid(config.horizon, config.record_every);

  const std::size_t num_envs = curve.environments.size();
  const std::size_t jobs = num_envs * config.replications;
  const std::size_t grid = curve.time_grid.size();
  std::vector<std::vector<double>> results(jobs);

  auto run_job = [&](std::size_t job) {
    const std::size_t e = job % num_envs;
    const std::size_t r = job / num_envs;
    Rng rng(derive_seed(config.master_seed, r * num_envs + e));
    const History history =
        run_episode(*config.policy, curve.environments[e], config.horizon, rng);
    const auto regret = cumulative_pseudo_regret(curve.environments[e], history);
    std::vector<double> sampled(grid);
    for (std::size_t i = 0; i < grid; ++i) sampled[i] = regret[curve.time_grid[i] - 1];
    results[job] = std::move(sampled);
  };

  const std::size_t workers =
      std::min(jobs, config.workers == 0 ? default_worker_count() : config.workers);
  if (workers <= 1) {
    for (std::size_t job = 0; job < jobs; ++job) run_job(job);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t job = next++; job < jobs && !failed; job = next++) {
          try {
            run_job(job);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  // Welford reduction in replication order.
  curve.mean_regret.assign(num_envs, std::vector<double>(grid, 0.0));
  curve.standard_error.assign(num_envs, std::vector<double>(grid, 0.0));
  for (std::size_t e = 0; e < num_envs; ++e) {
    std::vector<double> m2(grid, 0.0);
    for (std::size_t r = 0; r < config.replications; ++r) {
      const auto& sample = results[r * num_envs + e];
      const double n = static_cast<double>(r + 1);
      for (std::size_t i = 0; i < grid; ++i) {
        const double delta = sample[i] - curve.mean_regret[e][i];
        curve.mean_regret[e][i] += delta / n;
        m2[i] += delta * (sample[i] - curve.mean_regret[e][i]);
      }
    }
    if (config.replications > 1) {
      const double n = static_cast<double>(config.replications);
      for (std::size_t i = 0; i < grid; ++i) {
        curve.standard_error[e][i] = std::sqrt(m2[i] / (n - 1.0) / n);
      }
    }
  }
  curve.max_over_environments.assign(grid, 0.0);
  for (std::size_t i = 0; i < grid; ++i) {
    double best = curve.mean_regret[0][i];
    for (std::size_t e = 1; e < num_envs; ++e) best = std::max(best, curve.mean_regret[e][i]);
    curve.max_over_environments[i] = best;
  }
  for (const auto& request : config.overlays) {
    curve.overlays.push_back(evaluate_overlay(request, config.policy->num_arms(),
                                              static_cast<double>(config.horizon)));
  }

  if (!config.output_path.empty()) {
    std::ofstream out(config.output_path);
    if (!out) throw std::runtime_error("cannot write " + config.output_path);
    write_regret_csv(curve, out);
    if (!out) throw std::runtime_error("failed writing " + config.output_path);
  }
  return curve;
}

void write_regret_csv(const RegretCurve& curve, std::ostream& out) {
  out << "t,mean_regret,stderr,env_index\n";
  out << std::setprecision(17);
  for (std::size_t e = 0; e < curve.mean_regret.size(); ++e) {
    for (std::size_t i = 0; i < curve.time_grid.size(); ++i) {
      out << curve.time_grid[i] << ',' << curve.mean_regret[e][i] << ','
          << curve.standard_error[e][i] << ',' << e << '\n';
    }
  }
  for (std::size_t i = 0; i < curve.time_grid.size(); ++i) {
    out << curve.time_grid[i] << ',' << curve.max_over_environments[i] << ",,max\n";
  }
}

}  // namespace privbandit
