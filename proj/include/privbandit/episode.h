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

#ifndef PRIVBANDIT_EPISODE_H_
#define PRIVBANDIT_EPISODE_H_

#include <cstddef>

#include "privbandit/bandit.h"
#include "privbandit/policy.h"
#include "privbandit/random.h"

namespace privbandit {

// Plays `policy` against `env` for `horizon` steps. Locally private policies
// get every reward passed through their mechanism; the privatized value is
// stored alongside the raw one.
History run_episode(const Policy& policy, const Environment& env, std::size_t horizon, Rng& rng,
                    PrivacyLedger* ledger = nullptr);

struct HistoryProbability {
  double value = 0.0;
  // Some reward lies outside its arm's support (or a privatized value outside
  // the mechanism's outputs). Distinguishes a structural zero from underflow.
  bool support_violation = false;
};

// prod_t pi(A_t | H_{t-1}) f_{A_t}(X_t), times M(Z_t | X_t) for locally private
// policies whose history carries privatized rewards. The empty history has
// probability 1. Throws CapabilityError for non-auditable policies.
HistoryProbability history_probability(const Policy& policy, const Environment& env,
                                       const History& history);

}  // namespace privbandit

#endif  // PRIVBANDIT_EPISODE_H_
