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

// Exact privacy auditing by exhaustive enumeration.
//
// Every audit returns the largest absolute log-ratio over all neighbouring
// inputs together with the witness attaining it. Witnesses are the first
// maximiser in enumeration order, so reports are reproducible. A ratio p/0
// with p > 0 yields +infinity; 0/0 pairs are skipped.

#ifndef PRIVBANDIT_AUDITOR_H_
#define PRIVBANDIT_AUDITOR_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "privbandit/bandit.h"
#include "privbandit/mechanism.h"
#include "privbandit/policy.h"

namespace privbandit {

enum class PrivacyDefinition { kPanDp, kInstantaneousDp, kLocalMechanism, kEnvironment };

std::string definition_name(PrivacyDefinition definition);
PrivacyDefinition parse_definition(const std::string& name);

struct AuditWitness {
  bool found = false;
  // Action sequence a^T (pan / instantaneous) or the history's actions
  // (environment).
  std::vector<std::size_t> actions;
  // Pan-DP: outcome matrix, row-major K x T. Instantaneous-DP and
  // reward-sequence audits: rewards r_1..r_{T-1}. Local mechanism: {x}.
  // Environment: the history's rewards.
  std::vector<double> data;
  std::vector<double> neighbour_data;  // `data` with one entry replaced
  std::optional<double> output;        // local mechanism output z
};

struct AuditReport {
  PrivacyDefinition definition = PrivacyDefinition::kPanDp;
  double epsilon_claimed = std::numeric_limits<double>::quiet_NaN();
  double epsilon_measured = 0.0;
  AuditWitness witness;
  std::size_t horizon = 0;
  std::size_t num_arms = 0;
  std::vector<double> alphabet;
  bool identical_environments = false;
  double rho = 0.0;  // environment audits only
};

// Default enumeration budget for policy audits (work items, not states).
inline constexpr std::uint64_t kDefaultAuditCap = 10'000'000;

// P(a^T | realized rewards r), marginalising the policy's local mechanism
// when it has one. Only r_1..r_{T-1} influence the actions, so `rewards`
// needs at least actions.size() - 1 entries.
double action_sequence_probability(const Policy& policy, std::span<const std::size_t> actions,
                                   std::span<const double> rewards);

// Differential privacy with respect to the K x T generated-outcome matrix;
// neighbours differ in exactly one cell.
AuditReport audit_pan_dp(const Policy& policy, std::span<const double> alphabet,
                         std::size_t horizon, std::uint64_t cap = kDefaultAuditCap);

// The same supremum taken over reward sequences (one reward substituted).
AuditReport audit_reward_sequence_dp(const Policy& policy, std::span<const double> alphabet,
                                     std::size_t horizon, std::uint64_t cap = kDefaultAuditCap);

// Instantaneous DP: for every t <= T, the conditional law of a_t given a^{t-1}
// and r^{t-1} under one substituted reward.
AuditReport audit_instantaneous_dp(const Policy& policy, std::span<const double> alphabet,
                                   std::size_t horizon, std::uint64_t cap = kDefaultAuditCap);

// Max over input pairs and outputs of |log M(z|x) - log M(z|x')|.
AuditReport audit_channel(const Channel& channel);
AuditReport audit_local_mechanism(const Mechanism& mechanism, std::span<const double> alphabet);

// Default rho: L-infinity distance between the mean vectors.
double mean_distance(const Environment& env1, const Environment& env2);

// max_H |ln P_1(H) - ln P_2(H)| / rho over observed histories of length T.
// rho defaults to mean_distance. Identical environments report 0 with the
// identical-environment flag; rho = 0 with differing laws throws
// UndefinedRatioError.
AuditReport audit_environment_privacy(const Policy& policy, const Environment& env1,
                                      const Environment& env2, std::size_t horizon,
                                      std::optional<double> rho = std::nullopt,
                                      std::uint64_t cap = kDefaultAuditCap);

// Recomputes the log-ratio a witness certifies, independently of the search.
double witness_log_ratio(const Policy& policy, const AuditReport& report);
double witness_log_ratio(const Channel& channel, const AuditReport& report);
double witness_log_ratio(const Policy& policy, const Environment& env1, const Environment& env2,
                         const AuditReport& report);

struct EquivalenceReport {
  double outcome_epsilon = 0.0;
  double reward_epsilon = 0.0;
  bool equal = false;  // within 1e-9, or both infinite
};

// Pan-DP measured over outcome matrices versus over reward sequences.
EquivalenceReport verify_equivalence(const Policy& policy, std::span<const double> alphabet,
                                     std::size_t horizon, std::uint64_t cap = kDefaultAuditCap);

struct CompositionReport {
  double pan_epsilon = 0.0;
  double instantaneous_epsilon = 0.0;
  std::size_t horizon = 0;
  bool instantaneous_within_twice_pan = false;  // eps_inst <= 2 eps_pan + 1e-9
  bool pan_within_horizon_times_inst = false;   // eps_pan <= T eps_inst + 1e-9
  bool holds() const { return instantaneous_within_twice_pan && pan_within_horizon_times_inst; }
};

CompositionReport verify_composition(const Policy& policy, std::span<const double> alphabet,
                                     std::size_t horizon, std::uint64_t cap = kDefaultAuditCap);

}  // namespace privbandit

#endif  // PRIVBANDIT_AUDITOR_H_
