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

#include "privbandit/history_law.h"

#include <algorithm>
#include <cmath>

#include "privbandit/errors.h"
#include "privbandit/mechanism.h"

namespace privbandit {

Environment observed_environment(const Policy& policy, const Environment& env) {
  if (!policy.reads_privatized()) return env;
  const auto& mechanism = *policy.mechanism();
  if (!mechanism.is_finite()) {
    throw CapabilityError("observed history law needs a mechanism with a finite channel");
  }
  return corrupt_environment(env, mechanism);
}

std::vector<double> merged_alphabet(const Environment& a, const Environment& b) {
  auto out = a.alphabet();
  for (double v : b.alphabet()) {
    if (std::none_of(out.begin(), out.end(),
                     [v](double w) { return std::abs(v - w) <= kSupportTolerance; })) {
      out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> history_law(const Policy& policy, const Environment& observed_env,
                                std::span<const double> alphabet, std::size_t horizon,
                                std::uint64_t cap) {
  if (policy.num_arms() != observed_env.num_arms()) {
    throw DimensionError("history_law: policy and environment disagree on K");
  }
  const std::size_t num_arms = observed_env.num_arms();
  std::vector<std::vector<double>> reward_probs;
  for (const auto& arm : observed_env.arms()) reward_probs.push_back(arm.probs_over(alphabet));

  std::vector<double> law;
  law.reserve(history_space_size(num_arms, alphabet.size(), horizon));
  enumerate_histories(
      num_arms, alphabet, horizon,
      [&](const History& h) {
        ArmStatistics stats(num_arms);
        double p = 1.0;
        for (std::size_t t = 0; t < h.size() && p > 0.0; ++t) {
          const auto pi = policy.action_distribution(stats);
          const auto& step = h[t];
          const std::size_t symbol =
              std::lower_bound(alphabet.begin(), alphabet.end(), step.reward - kSupportTolerance) -
              alphabet.begin();
          p *= pi[step.action] * reward_probs[step.action][symbol];
          stats.record(step.action, step.reward);
        }
        law.push_back(p);
      },
      cap);
  return law;
}

}  // namespace privbandit
