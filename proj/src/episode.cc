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

#include "privbandit/episode.h"

#include "privbandit/errors.h"

namespace privbandit {

History run_episode(const Policy& policy, const Environment& env, std::size_t horizon, Rng& rng,
                    PrivacyLedger* ledger) {
  if (horizon == 0) throw std::invalid_argument("run_episode: horizon must be >= 1");
  if (policy.num_arms() != env.num_arms()) {
    throw DimensionError("run_episode: policy and environment disagree on K");
  }
  const auto& mechanism = policy.mechanism();
  ArmStatistics stats(env.num_arms());
  std::vector<HistoryStep> steps;
  steps.reserve(horizon);
  for (std::size_t t = 0; t < horizon; ++t) {
    const std::size_t action = policy.select_action(stats, rng, ledger);
    const double reward = sample_reward(env, action, rng);
    HistoryStep step{action, reward, std::nullopt};
    if (mechanism) step.privatized_reward = mechanism->apply(reward, rng);
    stats.record(action, step.privatized_reward.value_or(reward));
    steps.push_back(step);
  }
  return History(std::move(steps));
}

HistoryProbability history_probability(const Policy& policy, const Environment& env,
                                       const History& history) {
  if (policy.num_arms() != env.num_arms()) {
    throw DimensionError("history_probability: policy and environment disagree on K");
  }
  if (!policy.auditable()) {
    throw CapabilityError(policy.name() + " has no closed-form action distribution");
  }
  const auto& mechanism = policy.mechanism();
  const bool with_channel = mechanism && mechanism->is_finite();
  const Channel channel = with_channel ? mechanism->channel(env.alphabet()) : Channel{};

  HistoryProbability result{1.0, false};
  ArmStatistics stats(env.num_arms());
  for (const auto& step : history.steps()) {
    const auto pi = policy.action_distribution(stats);
    const auto f = env.arm(step.action).probability_of(step.reward);
    if (!f) {
      result.support_violation = true;
      result.value = 0.0;
      return result;
    }
    result.value *= pi[step.action] * *f;
    if (policy.reads_privatized()) {
      if (!step.privatized_reward) {
        throw ContractError("history_probability: locally private policy needs privatized rewards");
      }
      if (with_channel) {
        const double m = channel.probability(step.reward, *step.privatized_reward);
        if (m == 0.0) result.support_violation = true;
        result.value *= m;
      }
      stats.record(step.action, *step.privatized_reward);
    } else {
      stats.record(step.action, step.reward);
    }
  }
  return result;
}

}  // namespace privbandit
