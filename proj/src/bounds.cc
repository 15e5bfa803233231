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

#include "privbandit/bounds.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "privbandit/divergence.h"
#include "privbandit/errors.h"
#include "privbandit/mechanism.h"

namespace privbandit {
namespace {

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
}

void require_arms(std::size_t num_arms) {
  if (num_arms < 2) throw std::invalid_argument("bounds need K >= 2");
}

double leading_constant(const ConstantMode& mode, double proof_value, BoundSpec& spec) {
  switch (mode.kind) {
    case ConstantMode::Kind::kRateOnly: return 1.0;
    case ConstantMode::Kind::kCustom: return mode.custom;
    case ConstantMode::Kind::kProofConstant:
      if (std::isnan(proof_value)) {
        spec.warnings.push_back("no proof constant available; using 1");
        return 1.0;
      }
      return proof_value;
  }
  return 1.0;
}

// min{2, e^eps} (e^eps - 1), the local-privacy degradation of the minimax rate.
double local_rate_factor(double epsilon) {
  return std::min(2.0, std::exp(epsilon)) * std::expm1(epsilon);
}

BoundSpec make_spec(Regime regime, std::size_t num_arms, double horizon, double epsilon,
                    ConstantMode constant) {
  if (!(horizon >= 0.0)) throw DomainError("horizon T must be >= 0");
  BoundSpec spec;
  spec.regime = regime;
  spec.tag = "minimax";
  spec.num_arms = num_arms;
  spec.horizon = horizon;
  spec.epsilon = epsilon;
  spec.constant = constant;
  return spec;
}

BoundSpec as_bayesian(BoundSpec spec) {
  spec.tag = "bayesian";
  spec.bounded_reward_precondition = true;
  return spec;
}

}  // namespace

std::string regime_name(Regime regime) {
  switch (regime) {
    case Regime::kLocal: return "local";
    case Regime::kInstantaneous: return "instantaneous";
    case Regime::kDp: return "dp";
    case Regime::kNonprivateMinimax: return "nonprivate-minimax";
    case Regime::kNonprivateProblemDependent: return "nonprivate-problem-dep";
    case Regime::kLocalProblemDependent: return "local-problem-dep";
  }
  return "unknown";
}

Regime parse_regime(const std::string& name) {
  for (Regime r : {Regime::kLocal, Regime::kInstantaneous, Regime::kDp,
                   Regime::kNonprivateMinimax, Regime::kNonprivateProblemDependent,
                   Regime::kLocalProblemDependent}) {
    if (regime_name(r) == name) return r;
  }
  throw std::invalid_argument("unknown regime '" + name + "'");
}

std::string ConstantMode::name() const {
  switch (kind) {
    case Kind::kProofConstant: return "proof-constant";
    case Kind::kRateOnly: return "rate-only";
    case Kind::kCustom: return "custom";
  }
  return "unknown";
}

std::string dp_variant_name(DpVariant variant) {
  return variant == DpVariant::kAppendixDerivation ? "appendix-derivation" : "theorem-text";
}

DpVariant parse_dp_variant(const std::string& name) {
  if (name == "appendix-derivation") return DpVariant::kAppendixDerivation;
  if (name == "theorem-text") return DpVariant::kTheoremText;
  throw std::invalid_argument("unknown dp variant '" + name + "'");
}

BoundSpec minimax_lb_local(std::size_t num_arms, double horizon, double epsilon,
                           ConstantMode constant) {
  require_arms(num_arms);
  require_epsilon(epsilon);
  BoundSpec spec = make_spec(Regime::kLocal, num_arms, horizon, epsilon, constant);
  const double c = leading_constant(constant, 1.0 / (4.0 * std::exp(4.0)), spec);
  const double rate = std::sqrt(static_cast<double>(num_arms - 1) * horizon);
  spec.value = std::isinf(epsilon) ? 0.0 : c * rate / local_rate_factor(epsilon);
  if (horizon < threshold(num_arms, epsilon, Regime::kLocal)) {
    spec.warnings.push_back("T below threshold g(K, eps)");
  }
  return spec;
}

BoundSpec minimax_lb_instantaneous(std::size_t num_arms, double horizon, double epsilon,
                                   ConstantMode constant, double privacy_range_a) {
  require_arms(num_arms);
  require_epsilon(epsilon);
  BoundSpec spec = make_spec(Regime::kInstantaneous, num_arms, horizon, epsilon, constant);
  const double c = leading_constant(constant, std::nan(""), spec);
  if (std::isinf(epsilon)) {
    spec.value = 0.0;
  } else {
    const double denom = 2.0 * epsilon * std::expm1(2.0 * epsilon);
    spec.value = c * std::sqrt(static_cast<double>(num_arms - 1) * horizon / denom);
  }
  if (epsilon > privacy_range_a / 2.0) {
    spec.warnings.push_back("eps exceeds a/2 (a = " + std::to_string(privacy_range_a) + ")");
  }
  return spec;
}

BoundSpec minimax_lb_dp(std::size_t num_arms, double horizon, double epsilon,
                        double lipschitz_budget, DpVariant variant, ConstantMode constant) {
  require_arms(num_arms);
  require_epsilon(epsilon);
  if (!(lipschitz_budget >= 0.0)) throw DomainError("lipschitz budget c must be >= 0");
  BoundSpec spec = make_spec(Regime::kDp, num_arms, horizon, epsilon, constant);
  spec.lipschitz_budget = lipschitz_budget;
  spec.variant = dp_variant_name(variant);
  const double c = leading_constant(constant, 1.0 / 8.0, spec);
  if (std::isinf(epsilon)) {
    spec.value = 0.0;
    return spec;
  }
  const double eps = epsilon;
  const double base = static_cast<double>(num_arms - 1) * horizon;
  const double privacy_decay = std::exp(-3.0 * (eps + lipschitz_budget));
  if (variant == DpVariant::kAppendixDerivation) {
    const double log_term = std::log1p(eps * eps);
    spec.value = c * privacy_decay * std::sqrt(base * log_term / eps) *
                 std::pow(1.0 + eps * eps, -1.0 / (2.0 * eps));
  } else {
    // Evaluated in log space: eps^(1 + 1/eps) underflows quickly as eps -> 0.
    const double log_inner = std::log(base) + std::log(std::log1p(eps)) -
                             (1.0 + 1.0 / eps) * std::log(eps) - std::log1p(eps * eps) / eps;
    spec.value = c * privacy_decay * std::exp(0.5 * log_inner);
  }
  const double h = threshold(num_arms, epsilon, Regime::kDp, lipschitz_budget);
  if (horizon < h) spec.warnings.push_back("T below threshold h(K, eps)");
  return spec;
}

BoundSpec minimax_lb_nonprivate(std::size_t num_arms, double horizon, ConstantMode constant) {
  require_arms(num_arms);
  BoundSpec spec = make_spec(Regime::kNonprivateMinimax, num_arms, horizon, kInfiniteEpsilon,
                             constant);
  const double c = leading_constant(constant, std::nan(""), spec);
  spec.value = c * std::sqrt(static_cast<double>(num_arms - 1) * horizon);
  return spec;
}

namespace {

BoundSpec problem_dependent(const Environment& env, double epsilon, Regime regime) {
  const auto best = env.optimal_arms();
  if (best.size() != 1) {
    throw DegenerateInstanceError("problem-dependent bound needs a unique optimal arm");
  }
  BoundSpec spec;
  spec.regime = regime;
  spec.tag = "problem-dependent";
  spec.num_arms = env.num_arms();
  spec.epsilon = epsilon;
  spec.variant = "per-log-T coefficient";
  const double factor =
      regime == Regime::kLocalProblemDependent ? local_privacy_kl_factor(epsilon) : 1.0;
  const auto gaps = env.gaps();
  const auto& optimal = env.arm(best.front());
  for (std::size_t a = 0; a < env.num_arms(); ++a) {
    if (a == best.front()) continue;
    const double divergence = kl(env.arm(a), optimal);
    if (std::isinf(divergence)) {
      spec.warnings.push_back("arm " + std::to_string(a) + ": infinite KL, term dropped");
      continue;
    }
    if (gaps[a] == 0.0) continue;
    spec.value += gaps[a] / (factor * divergence);
  }
  return spec;
}

}  // namespace

BoundSpec problem_dependent_lb_local(const Environment& env, double epsilon) {
  require_epsilon(epsilon);
  return problem_dependent(env, epsilon, Regime::kLocalProblemDependent);
}

BoundSpec problem_dependent_lb_nonprivate(const Environment& env) {
  return problem_dependent(env, kInfiniteEpsilon, Regime::kNonprivateProblemDependent);
}

double threshold(std::size_t num_arms, double epsilon, Regime regime, double lipschitz_budget,
                 double lambert_constant) {
  require_epsilon(epsilon);
  const double k1 = static_cast<double>(num_arms) - 1.0;
  switch (regime) {
    case Regime::kLocal: {
      const double em1 = std::expm1(epsilon);
      return k1 / (std::min(4.0, std::exp(2.0 * epsilon)) * em1 * em1);
    }
    case Regime::kDp:
      return k1 * std::log1p(epsilon * epsilon) /
             (epsilon * std::exp(2.0 * (epsilon + lipschitz_budget)));
    case Regime::kInstantaneous:
      return 2.0 * k1 * lambert_constant / (4.0 * epsilon * std::expm1(2.0 * epsilon));
    default:
      throw std::invalid_argument("no horizon threshold for regime " + regime_name(regime));
  }
}

double hard_instance_gap(std::size_t num_arms, double horizon, double epsilon, Regime regime,
                         double lipschitz_budget, double lambert_constant) {
  require_arms(num_arms);
  require_epsilon(epsilon);
  if (!(horizon > 0.0)) throw std::invalid_argument("hard instance needs T > 0");
  const double k1 = static_cast<double>(num_arms) - 1.0;
  switch (regime) {
    case Regime::kLocal: {
      const double em1 = std::expm1(epsilon);
      return std::sqrt(k1 / (std::min(4.0, std::exp(2.0 * epsilon)) * em1 * em1 * horizon));
    }
    case Regime::kDp:
      return std::sqrt(k1 * std::log1p(epsilon * epsilon) /
                       (4.0 * horizon * epsilon * std::exp(2.0 * (epsilon + lipschitz_budget))));
    case Regime::kInstantaneous:
      return std::sqrt(k1 * lambert_constant /
                       (4.0 * epsilon * std::expm1(2.0 * epsilon) * horizon));
    default:
      throw std::invalid_argument("no hard instance for regime " + regime_name(regime));
  }
}

HardInstancePair hard_instance_pair(std::size_t num_arms, double horizon, double epsilon,
                                    Regime regime, double lipschitz_budget,
                                    double lambert_constant) {
  const double gap =
      hard_instance_gap(num_arms, horizon, epsilon, regime, lipschitz_budget, lambert_constant);
  if (gap > 0.5) {
    throw InfeasibleHorizonError("hard instance gap " + std::to_string(gap) +
                                 " exceeds 1/2; increase T");
  }
  std::vector<double> means1(num_arms, 0.5);
  means1[0] = 0.5 + gap;
  std::vector<double> means2 = means1;
  means2[num_arms - 1] = 0.5 + 2.0 * gap;
  return {Environment::bernoulli(means1), Environment::bernoulli(means2), gap, num_arms - 1,
          regime};
}

BoundSpec bayesian_lb_local(std::size_t num_arms, double horizon, double epsilon,
                            ConstantMode constant) {
  return as_bayesian(minimax_lb_local(num_arms, horizon, epsilon, constant));
}

BoundSpec bayesian_lb_instantaneous(std::size_t num_arms, double horizon, double epsilon,
                                    ConstantMode constant) {
  return as_bayesian(minimax_lb_instantaneous(num_arms, horizon, epsilon, constant));
}

BoundSpec bayesian_lb_dp(std::size_t num_arms, double horizon, double epsilon,
                         double lipschitz_budget, DpVariant variant, ConstantMode constant) {
  return as_bayesian(minimax_lb_dp(num_arms, horizon, epsilon, lipschitz_budget, variant,
                                   constant));
}

}  // namespace privbandit
