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

#include "privbandit/divergence.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "privbandit/errors.h"
#include "privbandit/history_law.h"

namespace privbandit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_length(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DimensionError("distributions over different supports");
}

std::string describe(const Environment& env) {
  std::ostringstream out;
  out << "[";
  const auto mu = env.means();
  for (std::size_t a = 0; a < mu.size(); ++a) out << (a ? "," : "") << mu[a];
  out << "]";
  return out.str();
}

// 0 * KL = 0 even when KL is infinite: an arm never pulled contributes nothing.
double weighted(double pulls, double divergence) {
  return pulls == 0.0 ? 0.0 : pulls * divergence;
}

double slack_of(double lhs, double rhs) {
  if (std::isinf(lhs) && std::isinf(rhs)) return 0.0;
  return rhs - lhs;
}

}  // namespace

void FiniteDistribution::validate() const {
  if (labels.size() != probs.size()) throw DimensionError("labels and probabilities differ");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw DomainError("negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("probabilities do not sum to 1");
}

double kl(std::span<const double> p, std::span<const double> q) {
  require_same_length(p, q);
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return kInf;
    total += p[i] * std::log(p[i] / q[i]);
  }
  // Rounding can push a true zero slightly negative.
  return std::max(total, 0.0);
}

double kl(const FiniteDistribution& p, const FiniteDistribution& q) {
  std::vector<double> labels = p.labels;
  for (double l : q.labels) {
    if (std::none_of(labels.begin(), labels.end(),
                     [l](double m) { return std::abs(l - m) <= kSupportTolerance; })) {
      labels.push_back(l);
    }
  }
  auto align = [&labels](const FiniteDistribution& d) {
    std::vector<double> out(labels.size(), 0.0);
    for (std::size_t i = 0; i < d.labels.size(); ++i) {
      for (std::size_t j = 0; j < labels.size(); ++j) {
        if (std::abs(labels[j] - d.labels[i]) <= kSupportTolerance) out[j] += d.probs[i];
      }
    }
    return out;
  };
  const auto pa = align(p);
  const auto qa = align(q);
  return kl(pa, qa);
}

double kl(const RewardDistribution& p, const RewardDistribution& q) {
  return kl(FiniteDistribution{p.support(), p.probs()}, FiniteDistribution{q.support(), q.probs()});
}

double bernoulli_kl(double p, double q) {
  const double pv[2] = {1.0 - p, p};
  const double qv[2] = {1.0 - q, q};
  return kl(pv, qv);
}

double tv_l1(std::span<const double> p, std::span<const double> q) {
  require_same_length(p, q);
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += std::abs(p[i] - q[i]);
  return total;
}

bool pinsker_check(std::span<const double> p, std::span<const double> q) {
  const double l1 = tv_l1(p, q);
  return l1 * l1 <= 2.0 * kl(p, q) + 1e-12;
}

bool bretagnolle_huber(double p_event, double q_event_complement, double kl_pq) {
  if (std::isinf(kl_pq)) return true;
  return p_event + q_event_complement >= 0.5 * std::exp(-kl_pq) - 1e-12;
}

bool bretagnolle_huber_strict(double p_event, double q_event_complement, double kl_pq) {
  if (std::isinf(kl_pq)) return true;
  return p_event + q_event_complement >= std::exp(-kl_pq) - 1e-12;
}

double local_privacy_kl_factor(double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
  if (std::isinf(epsilon)) return kInf;
  const double em1 = std::expm1(epsilon);
  return 2.0 * std::min(4.0, std::exp(2.0 * epsilon)) * em1 * em1;
}

double kl_history(const Policy& policy, const Environment& env1, const Environment& env2,
                  std::size_t horizon, std::uint64_t cap) {
  const auto obs1 = observed_environment(policy, env1);
  const auto obs2 = observed_environment(policy, env2);
  const auto alphabet = merged_alphabet(obs1, obs2);
  const auto law1 = history_law(policy, obs1, alphabet, horizon, cap);
  const auto law2 = history_law(policy, obs2, alphabet, horizon, cap);
  return kl(law1, law2);
}

std::vector<double> expected_pull_counts(const Policy& policy, const Environment& env,
                                         std::size_t horizon, std::uint64_t cap) {
  const auto obs = observed_environment(policy, env);
  if (policy.num_arms() != obs.num_arms()) {
    throw DimensionError("expected_pull_counts: policy and environment disagree on K");
  }
  const std::uint64_t size = history_space_size(obs.num_arms(), obs.alphabet().size(), horizon);
  if (size > cap) throw EnumerationBudgetError("expected_pull_counts: enumeration budget exceeded");

  std::vector<double> counts(obs.num_arms(), 0.0);
  auto recurse = [&](auto&& self, const ArmStatistics& stats, std::size_t depth,
                     double mass) -> void {
    if (depth == horizon) return;
    const auto pi = policy.action_distribution(stats);
    for (std::size_t a = 0; a < pi.size(); ++a) {
      const double reach = mass * pi[a];
      if (reach == 0.0) continue;
      counts[a] += reach;
      const auto& arm = obs.arm(a);
      for (std::size_t i = 0; i < arm.support().size(); ++i) {
        if (arm.probs()[i] == 0.0) continue;
        ArmStatistics next = stats;
        next.record(a, arm.support()[i]);
        self(self, next, depth + 1, reach * arm.probs()[i]);
      }
    }
  };
  recurse(recurse, ArmStatistics(obs.num_arms()), 0, 1.0);
  return counts;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "PASS";
    case Verdict::kFail: return "FAIL";
    case Verdict::kPreconditionFail: return "PRECONDITION-FAIL";
  }
  return "UNKNOWN";
}

DecompositionReport verify_lemma3(const Policy& policy, const Environment& env1,
                                  const Environment& env2, std::size_t horizon,
                                  std::uint64_t cap) {
  DecompositionReport report;
  report.lemma = "3";
  report.relation = "equality";
  report.lhs = kl_history(policy, env1, env2, horizon, cap);

  const auto obs1 = observed_environment(policy, env1);
  const auto obs2 = observed_environment(policy, env2);
  const auto pulls = expected_pull_counts(policy, env1, horizon, cap);
  // The same policy function runs in both environments, so every per-step
  // action-distribution KL vanishes.
  report.policy_term = 0.0;
  report.rhs = report.policy_term;
  for (std::size_t a = 0; a < pulls.size(); ++a) {
    report.per_arm_terms.push_back(weighted(pulls[a], kl(obs1.arm(a), obs2.arm(a))));
    report.rhs += report.per_arm_terms.back();
  }
  report.slack = slack_of(report.lhs, report.rhs);
  report.verdict = std::abs(report.slack) <= kDecompositionTolerance ? Verdict::kPass
                                                                      : Verdict::kFail;
  report.witness = "policy=" + policy.name() + " env1=" + describe(env1) +
                   " env2=" + describe(env2) + " T=" + std::to_string(horizon);
  return report;
}

DecompositionReport verify_lemma4(const Mechanism& mechanism, const Policy& base_policy,
                                  const Environment& env1, const Environment& env2,
                                  std::size_t horizon, std::uint64_t cap) {
  if (!mechanism.is_finite()) {
    throw CapabilityError("verify_lemma4 needs a mechanism with a finite channel");
  }
  DecompositionReport report;
  report.lemma = "4";
  report.relation = "inequality";

  // Uniform play ignores rewards, so its privatized system is itself run on
  // the corrupted arms.
  const bool reward_blind = base_policy.kind() == PolicyKind::kUniform;
  const Policy system = reward_blind ? base_policy : ldp_pipeline(base_policy, mechanism);
  const Environment sys1 = reward_blind ? corrupt_environment(env1, mechanism) : env1;
  const Environment sys2 = reward_blind ? corrupt_environment(env2, mechanism) : env2;

  report.lhs = kl_history(system, sys1, sys2, horizon, cap);
  const auto pulls = expected_pull_counts(system, sys1, horizon, cap);

  double original_term = 0.0;
  double privatized_term = 0.0;
  const auto g1 = corrupt_environment(env1, mechanism);
  const auto g2 = corrupt_environment(env2, mechanism);
  for (std::size_t a = 0; a < pulls.size(); ++a) {
    report.per_arm_terms.push_back(weighted(pulls[a], kl(env1.arm(a), env2.arm(a))));
    original_term += report.per_arm_terms.back();
    privatized_term += weighted(pulls[a], kl(g1.arm(a), g2.arm(a)));
  }
  const double factor = local_privacy_kl_factor(mechanism.epsilon());
  report.rhs = original_term == 0.0 ? 0.0 : factor * original_term;
  report.slack = slack_of(report.lhs, report.rhs);
  report.verdict = report.slack >= -kDecompositionTolerance ? Verdict::kPass : Verdict::kFail;
  report.info["privacy_factor"] = factor;
  report.info["privatized_decomposition"] = privatized_term;
  report.witness = "mechanism=" + mechanism.name() + " eps=" + std::to_string(mechanism.epsilon()) +
                   " policy=" + base_policy.name() + " env1=" + describe(env1) +
                   " env2=" + describe(env2) + " T=" + std::to_string(horizon);
  return report;
}

NeighbourPair random_bounded_ratio_pair(std::size_t size, double ratio_bound, Rng& rng) {
  if (size == 0 || size % 2 != 0) throw std::invalid_argument("need an even, nonzero size");
  if (!(ratio_bound >= 0.0)) throw DomainError("ratio bound must be >= 0");
  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = size - 1; i > 0; --i) {
    const std::size_t j = rng.next_u64() % (i + 1);
    std::swap(order[i], order[j]);
  }
  NeighbourPair pair{std::vector<double>(size), std::vector<double>(size),
                     std::vector<std::size_t>(size)};
  for (std::size_t k = 0; k < size; k += 2) {
    const std::size_t h = order[k];
    const std::size_t g = order[k + 1];
    pair.neighbour[h] = g;
    pair.neighbour[g] = h;
    for (auto* law : {&pair.p1, &pair.p2}) {
      const double w = 0.05 + 0.95 * rng.uniform();
      (*law)[h] = w;
      (*law)[g] = w * std::exp(ratio_bound * (2.0 * rng.uniform() - 1.0));
    }
  }
  for (auto* law : {&pair.p1, &pair.p2}) {
    const double total = std::accumulate(law->begin(), law->end(), 0.0);
    for (double& p : *law) p /= total;
  }
  return pair;
}

DecompositionReport verify_lemma6(double ratio_bound, const NeighbourPair& pair) {
  const std::size_t n = pair.p1.size();
  if (pair.p2.size() != n || pair.neighbour.size() != n) {
    throw DimensionError("verify_lemma6: inconsistent history space sizes");
  }
  DecompositionReport report;
  report.lemma = "6";
  report.relation = "inequality";

  const double limit = std::exp(ratio_bound) * (1.0 + 1e-12);
  for (const auto* law : {&pair.p1, &pair.p2}) {
    for (std::size_t h = 0; h < n; ++h) {
      const std::size_t g = pair.neighbour[h];
      if (g >= n) throw IndexError("verify_lemma6: neighbour index out of range");
      if ((*law)[h] > limit * (*law)[g]) {
        report.verdict = Verdict::kPreconditionFail;
        report.witness = "ratio bound violated at h=" + std::to_string(h) +
                         " h'=" + std::to_string(g);
        return report;
      }
    }
  }

  std::vector<double> q1(n), q2(n);
  for (std::size_t h = 0; h < n; ++h) {
    q1[h] = pair.p1[pair.neighbour[h]];
    q2[h] = pair.p2[pair.neighbour[h]];
  }
  report.lhs = kl(pair.p1, pair.p2);
  const double neighbour_kl = kl(q1, q2);
  const double b = ratio_bound;
  report.rhs = 2.0 * b + std::exp(2.0 * b) * neighbour_kl;
  report.slack = slack_of(report.lhs, report.rhs);
  report.verdict = report.slack >= -kDecompositionTolerance ? Verdict::kPass : Verdict::kFail;
  report.info["neighbour_kl"] = neighbour_kl;
  report.info["appendix_restatement_rhs"] = std::exp(b) * (2.0 * b + neighbour_kl);
  report.witness = "ratio_bound=" + std::to_string(b) + " points=" + std::to_string(n);
  return report;
}

double instantaneous_kl_bound(double epsilon, std::size_t horizon, double min_expected_pulls,
                              double reward_term) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
  const double policy_scale = 2.0 * epsilon * std::expm1(2.0 * epsilon);
  double ratio = 1.0;
  if (min_expected_pulls > 0.0 && horizon > 0) {
    const double decay = std::exp(-static_cast<double>(horizon) / min_expected_pulls);
    ratio = (1.0 - 2.0 * decay) / (1.0 - decay);
  }
  return policy_scale * ratio + reward_term;
}

}  // namespace privbandit
