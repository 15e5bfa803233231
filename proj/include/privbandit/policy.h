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

// Bandit decision rules.
//
// A Policy is an immutable rule object. Everything that changes during an
// episode (pull counts, reward sums, spent privacy budget) lives in an
// ArmStatistics / PrivacyLedger owned by the caller, so one Policy can drive
// many concurrent episodes.
//
// Auditable policies (uniform, softmax, ldp-softmax over a finite mechanism)
// expose their exact action distribution given a history; the UCB family is
// sampling-only.

#ifndef PRIVBANDIT_POLICY_H_
#define PRIVBANDIT_POLICY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "privbandit/bandit.h"
#include "privbandit/mechanism.h"
#include "privbandit/random.h"

namespace privbandit {

enum class PolicyKind { kUniform, kSoftmax, kUcb1, kLdpSoftmax, kLdpUcb, kIdpNoisyUcb };

std::string policy_kind_name(PolicyKind kind);

// Running per-arm pull counts and sums of the rewards a policy consumes.
struct ArmStatistics {
  explicit ArmStatistics(std::size_t num_arms) : counts(num_arms, 0), sums(num_arms, 0.0) {}

  void record(std::size_t arm, double value) {
    ++counts[arm];
    sums[arm] += value;
    ++total;
  }

  std::vector<std::uint64_t> counts;
  std::vector<double> sums;
  std::uint64_t total = 0;
};

// Per-decision privacy budget spent by an instantaneously private policy.
class PrivacyLedger {
 public:
  void record(double epsilon) {
    per_step_.push_back(epsilon);
    cumulative_ += epsilon;
  }
  const std::vector<double>& per_step() const { return per_step_; }
  // Sequential composition: the sum of per-step budgets.
  double cumulative() const { return cumulative_; }

 private:
  std::vector<double> per_step_;
  double cumulative_ = 0.0;
};

class Policy {
 public:
  static constexpr double kDefaultPriorMean = 0.5;
  static constexpr double kDefaultExploration = 2.0;

  static Policy uniform(std::size_t num_arms);
  // Action probabilities proportional to exp(beta * mean_a); unpulled arms
  // use `prior_mean`.
  static Policy softmax(std::size_t num_arms, double beta, double prior_mean = kDefaultPriorMean);
  // argmax mean_a + sqrt(exploration * ln t / N_a), unpulled arms first,
  // ties to the lowest index.
  static Policy ucb1(std::size_t num_arms, double exploration = kDefaultExploration);

  PolicyKind kind() const { return kind_; }
  std::string name() const { return policy_kind_name(kind_); }
  std::size_t num_arms() const { return num_arms_; }
  double beta() const { return beta_; }
  double prior_mean() const { return prior_mean_; }
  double exploration() const { return exploration_; }
  const std::optional<Mechanism>& mechanism() const { return mechanism_; }
  const std::vector<double>& epsilon_schedule() const { return epsilon_schedule_; }
  // Budget spent at decision `t` (1-based) by idp-noisy-ucb.
  double epsilon_at(std::uint64_t t) const;

  bool auditable() const;
  // True for locally private kinds, which consume privatized rewards only.
  bool reads_privatized() const { return mechanism_.has_value(); }

  // Statistics of the reward stream this policy is allowed to see. Throws
  // ContractError if a locally private policy meets a step without a
  // privatized reward.
  ArmStatistics observe(const History& history) const;

  // Exact pi(. | history). Throws CapabilityError for sampling-only kinds.
  std::vector<double> action_distribution(const History& history) const;
  std::vector<double> action_distribution(const ArmStatistics& stats) const;

  // Draws the next action. `ledger`, when given, receives the budget spent.
  std::size_t select_action(const ArmStatistics& stats, Rng& rng,
                            PrivacyLedger* ledger = nullptr) const;
  std::size_t select_action(const History& history, Rng& rng) const;

  bool operator==(const Policy& other) const = default;

 private:
  friend Policy ldp_pipeline(const Policy& base, const Mechanism& mechanism);
  friend Policy idp_noisy_ucb(std::size_t num_arms, std::vector<double> epsilon_schedule,
                              double exploration);

  Policy(PolicyKind kind, std::size_t num_arms) : kind_(kind), num_arms_(num_arms) {}

  double consumed_mean(double sum, std::uint64_t count) const;
  std::size_t ucb_choice(const ArmStatistics& stats, const std::vector<double>& sums) const;

  PolicyKind kind_;
  std::size_t num_arms_;
  double beta_ = 0.0;
  double prior_mean_ = kDefaultPriorMean;
  double exploration_ = kDefaultExploration;
  std::optional<Mechanism> mechanism_;
  std::vector<double> epsilon_schedule_;
};

// Wraps softmax / ucb1 so that it only ever reads privatized rewards produced
// by `mechanism`. ldp-ucb additionally debiases randomized-response means.
Policy ldp_pipeline(const Policy& base, const Mechanism& mechanism);

// UCB1 on Laplace-perturbed reward sums with fresh noise at every decision.
// Decision t spends epsilon_schedule[min(t, size) - 1]; the infinite sentinel
// disables the noise.
Policy idp_noisy_ucb(std::size_t num_arms, std::vector<double> epsilon_schedule,
                     double exploration = Policy::kDefaultExploration);

}  // namespace privbandit

#endif  // PRIVBANDIT_POLICY_H_
