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

// Stochastic bandit model over finite reward alphabets: environments,
// histories, generated-outcome matrices, regret accounting and exhaustive
// history enumeration.

#ifndef PRIVBANDIT_BANDIT_H_
#define PRIVBANDIT_BANDIT_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "privbandit/random.h"

namespace privbandit {

// Two reward values are the same symbol if they agree to this tolerance.
inline constexpr double kSupportTolerance = 1e-12;

// Default cap on the number of states an exhaustive enumeration may visit.
inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// Finite reward distribution with support in [0, 1].
class RewardDistribution {
 public:
  RewardDistribution(std::vector<double> support, std::vector<double> probs);

  static RewardDistribution bernoulli(double p);
  static RewardDistribution point_mass(double value);

  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& probs() const { return probs_; }

  double mean() const;
  // Probability of `value`, or nullopt when `value` is not a support symbol.
  std::optional<double> probability_of(double value) const;
  bool is_binary() const;  // support contained in {0, 1}
  // Probability vector over `alphabet` (zero outside the support).
  std::vector<double> probs_over(std::span<const double> alphabet) const;

 private:
  std::vector<double> support_;
  std::vector<double> probs_;
};

class Environment {
 public:
  // Throws std::invalid_argument for fewer than two arms.
  explicit Environment(std::vector<RewardDistribution> arms);

  // Bernoulli arms with the given means.
  static Environment bernoulli(std::span<const double> means);

  std::size_t num_arms() const { return arms_.size(); }
  const RewardDistribution& arm(std::size_t a) const;
  const std::vector<RewardDistribution>& arms() const { return arms_; }

  std::vector<double> means() const;
  double optimal_mean() const;
  std::vector<double> gaps() const;
  std::vector<std::size_t> optimal_arms() const;
  // Sorted union of all arm supports.
  std::vector<double> alphabet() const;

  bool operator==(const Environment& other) const;

 private:
  std::vector<RewardDistribution> arms_;
};

struct HistoryStep {
  std::size_t action = 0;
  double reward = 0.0;
  std::optional<double> privatized_reward;

  bool operator==(const HistoryStep& other) const = default;
};

class History {
 public:
  History() = default;
  explicit History(std::vector<HistoryStep> steps) : steps_(std::move(steps)) {}

  void push_back(const HistoryStep& step) { steps_.push_back(step); }
  void pop_back() { steps_.pop_back(); }
  std::size_t size() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }
  const HistoryStep& operator[](std::size_t t) const { return steps_[t]; }
  HistoryStep& operator[](std::size_t t) { return steps_[t]; }
  const std::vector<HistoryStep>& steps() const { return steps_; }

  // N_a(T) for every arm; throws IndexError on an action >= num_arms.
  std::vector<std::uint64_t> pull_counts(std::size_t num_arms) const;

  bool operator==(const History& other) const = default;

 private:
  std::vector<HistoryStep> steps_;
};

// K x T matrix of generated outcomes x_{t,a}; row per arm, column per step.
class GeneratedOutcomes {
 public:
  GeneratedOutcomes(std::size_t num_arms, std::size_t horizon, double fill = 0.0)
      : num_arms_(num_arms), horizon_(horizon), cells_(num_arms * horizon, fill) {}

  std::size_t num_arms() const { return num_arms_; }
  std::size_t horizon() const { return horizon_; }
  double at(std::size_t arm, std::size_t t) const { return cells_[arm * horizon_ + t]; }
  double& at(std::size_t arm, std::size_t t) { return cells_[arm * horizon_ + t]; }
  bool operator==(const GeneratedOutcomes& other) const = default;

 private:
  std::size_t num_arms_;
  std::size_t horizon_;
  std::vector<double> cells_;
};

// Draw from arm `arm`'s reward distribution. Throws IndexError.
double sample_reward(const Environment& env, std::size_t arm, Rng& rng);

// One generated outcome per arm and step.
GeneratedOutcomes generate_outcomes(const Environment& env, std::size_t horizon, Rng& rng);

// sum_a counts[a] * (mu* - mu_a). Throws DimensionError on length mismatch.
double expected_regret(const Environment& env, std::span<const double> pull_counts);
double expected_regret(const Environment& env, std::span<const std::uint64_t> pull_counts);

// Number of (action, reward) sequences of length `horizon`, saturating at
// UINT64_MAX.
std::uint64_t history_space_size(std::size_t num_arms, std::size_t alphabet_size,
                                 std::size_t horizon);

using HistoryVisitor = std::function<void(const History&)>;

// Calls `visit` once for every history in ([K] x alphabet)^T, in
// lexicographic order of (action, reward index) with step 1 most significant.
// Throws EnumerationBudgetError if the space exceeds `cap`.
void enumerate_histories(std::size_t num_arms, std::span<const double> alphabet,
                         std::size_t horizon, const HistoryVisitor& visit,
                         std::uint64_t cap = kDefaultEnumerationCap);

// Materialized form of enumerate_histories for small spaces.
std::vector<History> all_histories(std::size_t num_arms, std::span<const double> alphabet,
                                   std::size_t horizon,
                                   std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace privbandit

#endif  // PRIVBANDIT_BANDIT_H_
