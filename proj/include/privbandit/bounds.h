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

// Closed-form regret lower bounds for private bandits, their horizon
// thresholds, and the two-environment hard instances behind them.

#ifndef PRIVBANDIT_BOUNDS_H_
#define PRIVBANDIT_BOUNDS_H_

#include <cstddef>
#include <string>
#include <vector>

#include "privbandit/bandit.h"

namespace privbandit {

enum class Regime {
  kLocal,
  kInstantaneous,
  kDp,
  kNonprivateMinimax,
  kNonprivateProblemDependent,
  kLocalProblemDependent,
};

std::string regime_name(Regime regime);
Regime parse_regime(const std::string& name);  // throws std::invalid_argument

// How the multiplicative constant in front of a rate is chosen.
struct ConstantMode {
  enum class Kind { kProofConstant, kRateOnly, kCustom };
  Kind kind = Kind::kRateOnly;
  double custom = 1.0;

  static ConstantMode proof_constant() { return {Kind::kProofConstant, 1.0}; }
  static ConstantMode rate_only() { return {Kind::kRateOnly, 1.0}; }
  static ConstantMode custom_value(double c) { return {Kind::kCustom, c}; }
  std::string name() const;
};

// Which closed form of the general-DP minimax bound to evaluate.
enum class DpVariant {
  // Last line of the hard-instance derivation; uses ln(eps^2 + 1). Default.
  kAppendixDerivation,
  // The theorem as stated: ln(eps + 1) and eps^(1 + 1/eps) in the denominator.
  kTheoremText,
};

std::string dp_variant_name(DpVariant variant);
DpVariant parse_dp_variant(const std::string& name);

struct BoundSpec {
  Regime regime = Regime::kLocal;
  std::string tag;  // "minimax", "bayesian" or "problem-dependent"
  std::size_t num_arms = 0;
  double horizon = 0.0;
  double epsilon = 0.0;
  double lipschitz_budget = 0.0;  // c = L * Delta, dp regime only
  ConstantMode constant;
  std::string variant;
  double value = 0.0;
  std::vector<std::string> warnings;
  bool bounded_reward_precondition = false;
};

// c * sqrt((K-1) T) / (min{2, e^eps} (e^eps - 1)); proof constant 1/(4 e^4).
// Attaches a warning when T < g(K, eps).
BoundSpec minimax_lb_local(std::size_t num_arms, double horizon, double epsilon,
                           ConstantMode constant = ConstantMode::rate_only());

// c * sqrt((K-1) T / (2 eps (e^{2 eps} - 1))). The proof leaves the constant
// undetermined, so proof-constant mode falls back to 1 with a warning. The
// precondition eps <= a/2 is advisory.
BoundSpec minimax_lb_instantaneous(std::size_t num_arms, double horizon, double epsilon,
                                   ConstantMode constant = ConstantMode::rate_only(),
                                   double privacy_range_a = 2.0);

// General DP. Proof-constant mode keeps the leading 1/8; rate-only drops it.
BoundSpec minimax_lb_dp(std::size_t num_arms, double horizon, double epsilon,
                        double lipschitz_budget = 0.0,
                        DpVariant variant = DpVariant::kAppendixDerivation,
                        ConstantMode constant = ConstantMode::proof_constant());

// Non-private sqrt((K-1) T) rate (constant 1 or custom).
BoundSpec minimax_lb_nonprivate(std::size_t num_arms, double horizon,
                                ConstantMode constant = ConstantMode::rate_only());

// liminf R(T)/log T coefficient sum_{a != a*} Delta_a / (factor(eps) KL(f_a || f*)).
// Throws DegenerateInstanceError without a unique optimal arm; infinite-KL
// terms are dropped with a warning.
BoundSpec problem_dependent_lb_local(const Environment& env, double epsilon);

// Lai-Robbins coefficient sum_{a != a*} Delta_a / KL(f_a || f*).
BoundSpec problem_dependent_lb_nonprivate(const Environment& env);

// Horizon thresholds: local g(K, eps); dp h(K, eps) with budget c;
// instantaneous 2 (K-1) C / (4 eps (e^{2 eps} - 1)) with C = lambert_constant.
double threshold(std::size_t num_arms, double epsilon, Regime regime,
                 double lipschitz_budget = 0.0, double lambert_constant = 1.0);

// Gap of the two-environment construction for the regime.
double hard_instance_gap(std::size_t num_arms, double horizon, double epsilon, Regime regime,
                         double lipschitz_budget = 0.0, double lambert_constant = 1.0);

struct HardInstancePair {
  Environment env1;
  Environment env2;
  double gap = 0.0;
  std::size_t target_arm = 0;  // the arm whose law differs
  Regime regime = Regime::kLocal;
};

// Bernoulli pair with means {0.5+D, 0.5, ..., 0.5} and {0.5+D, 0.5, ..., 0.5+2D}.
// Throws InfeasibleHorizonError when D > 1/2.
HardInstancePair hard_instance_pair(std::size_t num_arms, double horizon, double epsilon,
                                    Regime regime, double lipschitz_budget = 0.0,
                                    double lambert_constant = 1.0);

// Bayesian minimax aliases: equal in value to the minimax bounds for bounded
// rewards, tagged "bayesian".
BoundSpec bayesian_lb_local(std::size_t num_arms, double horizon, double epsilon,
                            ConstantMode constant = ConstantMode::rate_only());
BoundSpec bayesian_lb_instantaneous(std::size_t num_arms, double horizon, double epsilon,
                                    ConstantMode constant = ConstantMode::rate_only());
BoundSpec bayesian_lb_dp(std::size_t num_arms, double horizon, double epsilon,
                         double lipschitz_budget = 0.0,
                         DpVariant variant = DpVariant::kAppendixDerivation,
                         ConstantMode constant = ConstantMode::proof_constant());

}  // namespace privbandit

#endif  // PRIVBANDIT_BOUNDS_H_
