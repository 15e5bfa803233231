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

// Laws of observed histories as dense vectors in enumerate_histories order.
// Grid sweeps compute one law per environment and reuse it for every pair.

#ifndef PRIVBANDIT_HISTORY_LAW_H_
#define PRIVBANDIT_HISTORY_LAW_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "privbandit/bandit.h"
#include "privbandit/policy.h"

namespace privbandit {

// The arms a policy actually observes: `env` itself, or its pushforward
// through the policy's (finite) local mechanism.
Environment observed_environment(const Policy& policy, const Environment& env);

// Sorted union of both alphabets.
std::vector<double> merged_alphabet(const Environment& a, const Environment& b);

// P(H) for every observed history H in ([K] x alphabet)^horizon.
std::vector<double> history_law(const Policy& policy, const Environment& observed_env,
                                std::span<const double> alphabet, std::size_t horizon,
                                std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace privbandit

#endif  // PRIVBANDIT_HISTORY_LAW_H_
