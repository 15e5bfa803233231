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

// Grid and randomized sweeps that check the divergence identities, the
// information inequalities, the privacy audits and the bound formulas cell by
// cell. Each sweep reports the number of cells, the failures and the worst
// cell seen.

#ifndef PRIVBANDIT_SWEEPS_H_
#define PRIVBANDIT_SWEEPS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "privbandit/policy.h"

namespace privbandit {

struct SweepResult {
  std::string name;
  std::size_t cells = 0;
  std::size_t failures = 0;
  // Largest |lhs - rhs| for equalities; smallest slack for inequalities.
  double worst = 0.0;
  std::string worst_cell;
  std::string first_failure;
  double seconds = 0.0;

  bool passed() const { return cells > 0 && failures == 0; }
};

// {0, step, 2 step, ..., 1}.
std::vector<double> bernoulli_grid(double step);

struct GridSweepOptions {
  std::vector<std::size_t> arms{2, 3};
  std::vector<std::size_t> horizons{1, 2, 3};
  std::vector<double> betas{0.0, 1.0, 5.0};
  double grid_step = 0.25;
  std::vector<double> epsilons{0.1, 0.5, 1.0, 2.0};  // randomized response, lemma 4
};

// History-KL chain rule on every ordered pair of Bernoulli environments from
// the grid, softmax policies. Laws are computed once per environment.
SweepResult sweep_lemma3(const GridSweepOptions& options = {});

// Locally private KL contraction on the same grid for every epsilon.
SweepResult sweep_lemma4(const GridSweepOptions& options = {});

// `count` random bounded-ratio pairs for every ratio bound b = eps + c.
SweepResult sweep_lemma6(const std::vector<double>& ratio_bounds = {0.1, 0.5, 1.0},
                         std::size_t count = 1000, std::uint64_t seed = 6);

SweepResult sweep_pinsker(std::size_t count = 1000, std::uint64_t seed = 7);
SweepResult sweep_bretagnolle_huber(std::size_t count = 1000, std::uint64_t seed = 8);

// `count` seeded auditable policies (softmax and ldp-softmax with randomized
// response); outcome-matrix and reward-sequence audits must agree.
std::vector<Policy> random_auditable_policies(std::size_t num_arms, std::size_t count,
                                              std::uint64_t seed);
SweepResult sweep_equivalence(std::size_t count = 20, std::uint64_t seed = 1,
                              std::size_t num_arms = 2, std::size_t horizon = 2);

// Both composition directions for every policy of audit_policy_grid on every
// (K, T) cell.
std::vector<Policy> audit_policy_grid(std::size_t num_arms);
SweepResult sweep_composition(const std::vector<std::size_t>& arms = {2, 3},
                              const std::vector<std::size_t>& horizons = {1, 2, 3});

// Randomized-response audits reproduce eps within 1e-12; uniform audits to 0.
SweepResult sweep_auditor_exactness(const std::vector<double>& epsilons = {});

// Audited eps never grows under `count` random stochastic post-maps.
SweepResult sweep_post_processing(std::size_t count = 50, std::uint64_t seed = 9);

// Every minimax bound strictly decreasing on the 0.1 grid of (0, 4] and
// proportional to sqrt(T) in rate-only mode (relative error 1e-9).
SweepResult sweep_monotonicity();

// Every sweep above with default arguments.
std::vector<SweepResult> run_all_sweeps();

}  // namespace privbandit

#endif  // PRIVBANDIT_SWEEPS_H_
