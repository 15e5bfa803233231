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

// KL divergence, total variation and the inequalities used to turn history
// divergences into regret lower bounds. The verify_* functions evaluate both
// sides of a KL decomposition by exhaustive enumeration of histories.
//
// Divergences return +infinity (not an exception) when the first argument
// puts mass where the second has none.

#ifndef PRIVBANDIT_DIVERGENCE_H_
#define PRIVBANDIT_DIVERGENCE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "privbandit/bandit.h"
#include "privbandit/mechanism.h"
#include "privbandit/policy.h"
#include "privbandit/random.h"

namespace privbandit {

// Labelled probability vector.
struct FiniteDistribution {
  std::vector<double> labels;
  std::vector<double> probs;

  // Throws DomainError unless probs is a simplex vector (tolerance 1e-12).
  void validate() const;
};

double kl(std::span<const double> p, std::span<const double> q);
// Aligns the two label sets; missing labels carry probability 0.
double kl(const FiniteDistribution& p, const FiniteDistribution& q);
double kl(const RewardDistribution& p, const RewardDistribution& q);
double bernoulli_kl(double p, double q);

// ||p - q||_1 (twice the supremum distance).
double tv_l1(std::span<const double> p, std::span<const double> q);

// ||p - q||_1^2 <= 2 KL(p || q).
bool pinsker_check(std::span<const double> p, std::span<const double> q);

// P(E) + Q(E^c) >= exp(-KL) / 2. An infinite KL makes the bound vacuous.
bool bretagnolle_huber(double p_event, double q_event_complement, double kl_pq);
// The same inequality without the factor 1/2; reported for information only.
bool bretagnolle_huber_strict(double p_event, double q_event_complement, double kl_pq);

// 2 min{4, e^{2 eps}} (e^eps - 1)^2: the per-pull KL inflation allowed by an
// eps-locally private channel.
double local_privacy_kl_factor(double epsilon);

// Exact KL between the laws of the observed histories of length `horizon`
// produced by `policy` in the two environments. For locally private policies
// the observed rewards are the privatized ones.
double kl_history(const Policy& policy, const Environment& env1, const Environment& env2,
                  std::size_t horizon, std::uint64_t cap = kDefaultEnumerationCap);

// E[N_a(horizon)] for every arm, by recursion over the probability tree of
// observed histories (a code path independent of enumerate_histories).
std::vector<double> expected_pull_counts(const Policy& policy, const Environment& env,
                                         std::size_t horizon,
                                         std::uint64_t cap = kDefaultEnumerationCap);

enum class Verdict { kPass, kFail, kPreconditionFail };
std::string verdict_name(Verdict v);

struct DecompositionReport {
  std::string lemma;
  std::string relation;  // "equality" or "inequality"
  double lhs = 0.0;
  double rhs = 0.0;
  double policy_term = 0.0;
  std::vector<double> per_arm_terms;  // E[N_a] * KL(f_a^1 || f_a^2)
  double slack = 0.0;                 // rhs - lhs
  Verdict verdict = Verdict::kPass;
  std::string witness;
  std::map<std::string, double> info;
};

inline constexpr double kDecompositionTolerance = 1e-9;

// Chain-rule decomposition of the history KL into the policy term plus
// sum_a E_1[N_a] KL(f_a^1 || f_a^2). Equality within 1e-9.
DecompositionReport verify_lemma3(const Policy& policy, const Environment& env1,
                                  const Environment& env2, std::size_t horizon,
                                  std::uint64_t cap = kDefaultEnumerationCap);

// KL of the privatized system <= local_privacy_kl_factor(eps) *
// sum_a E_1[N_a] KL(f_a^1 || f_a^2) over the original reward laws.
DecompositionReport verify_lemma4(const Mechanism& mechanism, const Policy& base_policy,
                                  const Environment& env1, const Environment& env2,
                                  std::size_t horizon,
                                  std::uint64_t cap = kDefaultEnumerationCap);

// Two laws on a finite history space together with a neighbour bijection.
struct NeighbourPair {
  std::vector<double> p1;
  std::vector<double> p2;
  std::vector<std::size_t> neighbour;  // neighbour[h] is H'
};

// Random pair on `size` points (size even) whose neighbour map is a fixed-
// point-free involution and whose ratios satisfy P(h) <= e^bound P(h').
NeighbourPair random_bounded_ratio_pair(std::size_t size, double ratio_bound, Rng& rng);

// KL(P1(H) || P2(H)) <= 2 b + e^{2b} KL(P1(H') || P2(H')) with b = eps + c,
// after checking P_i(h) <= e^b P_i(h') on every matched pair.
DecompositionReport verify_lemma6(double ratio_bound, const NeighbourPair& pair);

// Upper bound on the history KL of an eps-instantaneously private policy:
// 2 eps (e^{2 eps} - 1) (1 - 2 e^{-T/l}) / (1 - e^{-T/l}) + reward_term.
double instantaneous_kl_bound(double epsilon, std::size_t horizon, double min_expected_pulls,
                              double reward_term);

}  // namespace privbandit

#endif  // PRIVBANDIT_DIVERGENCE_H_
