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

// Seeded regret experiments.
//
// Replication r in environment e is seeded with derive_seed(master, r * E + e),
// so a run is fully determined by its config. Replications may run on several
// threads; per-replication results are stored by index and reduced in index
// order, which keeps the output bit-identical for any worker count.
//
// CSV schema (one row per grid time and environment, then the max-over-
// environments curve with env_index "max"):
//
//   t,mean_regret,stderr,env_index

#ifndef PRIVBANDIT_EXPERIMENT_H_
#define PRIVBANDIT_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "privbandit/bandit.h"
#include "privbandit/bounds.h"
#include "privbandit/json_io.h"
#include "privbandit/policy.h"

namespace privbandit {

struct HardInstanceRequest {
  Regime regime = Regime::kLocal;
  std::size_t num_arms = 2;
  double epsilon = 1.0;
  double lipschitz_budget = 0.0;
  double lambert_constant = 1.0;
};

struct BoundRequest {
  Regime regime = Regime::kLocal;
  double epsilon = 1.0;
  ConstantMode constant = ConstantMode::proof_constant();
  DpVariant variant = DpVariant::kAppendixDerivation;
  double lipschitz_budget = 0.0;
};

struct ExperimentConfig {
  std::optional<Policy> policy;
  // Either explicit environments or a hard-instance request (not both).
  std::vector<Environment> environments;
  std::optional<HardInstanceRequest> hard_instance;
  std::size_t horizon = 0;
  std::size_t replications = 1;
  std::uint64_t master_seed = 0;
  std::string output_path;  // empty: no CSV written
  std::vector<BoundRequest> overlays;
  // Regret is recorded every `record_every` steps and at T; 0 picks T/100.
  std::size_t record_every = 0;
  // 0: PRIVBANDIT_WORKERS or 1.
  std::size_t workers = 0;

  // Throws ConfigError describing the first invalid field.
  void validate() const;
};

// Parses {"policy": {...}, "environments": [...] | "environment": {...} |
// "hard_instance": {...}, "horizon": T, "replications": R, "seed": s,
// "output": path, "overlays": [...], "record_every": n, "workers": w}.
ExperimentConfig experiment_config_from_json(const Json& j);

struct RegretCurve {
  std::vector<std::size_t> time_grid;
  // [environment][grid index]
  std::vector<std::vector<double>> mean_regret;
  std::vector<std::vector<double>> standard_error;
  std::vector<double> max_over_environments;
  std::vector<Environment> environments;
  std::vector<BoundSpec> overlays;  // evaluated at the horizon
  std::size_t replications = 0;

  double final_max_regret() const;
};

// Pseudo-regret sum_t Delta_{A_t} after every step of one episode.
std::vector<double> cumulative_pseudo_regret(const Environment& env, const History& history);

// Runs the experiment and writes the CSV if an output path is set. Throws
// std::runtime_error when the output path cannot be written.
RegretCurve run_experiment(const ExperimentConfig& config);

void write_regret_csv(const RegretCurve& curve, std::ostream& out);

// Worker count from the PRIVBANDIT_WORKERS environment variable (default 1).
std::size_t default_worker_count();

}  // namespace privbandit

#endif  // PRIVBANDIT_EXPERIMENT_H_
