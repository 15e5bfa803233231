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

// Local reward randomizers. A Mechanism maps a realized reward to the
// privatized value a locally private learner observes.

#ifndef PRIVBANDIT_MECHANISM_H_
#define PRIVBANDIT_MECHANISM_H_

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "privbandit/bandit.h"
#include "privbandit/random.h"

namespace privbandit {

// Sentinel for "no privacy" (epsilon = infinity).
inline constexpr double kInfiniteEpsilon = std::numeric_limits<double>::infinity();

// Probability that randomized response reports its input truthfully,
// e^eps / (1 + e^eps). Equals 1 at the infinite sentinel.
double rr_keep_probability(double epsilon);
// 1 / (1 + e^eps), computed directly rather than as 1 - keep.
double rr_flip_probability(double epsilon);

// Finite stochastic matrix: rows indexed by input symbol, columns by output.
struct Channel {
  std::vector<double> inputs;
  std::vector<double> outputs;
  std::vector<std::vector<double>> rows;

  // Probability of `output` given `input`; 0 for unknown symbols.
  double probability(double input, double output) const;
  std::size_t input_index(double input) const;  // throws DomainError
};

// Channel followed by a stochastic post-map (rows over `post_outputs`).
Channel compose(const Channel& channel, const std::vector<std::vector<double>>& post_map,
                std::vector<double> post_outputs);

enum class MechanismKind { kRandomizedResponse, kLaplace, kIdentity };

class Mechanism {
 public:
  static Mechanism randomized_response(double epsilon);
  static Mechanism laplace(double epsilon, double sensitivity = 1.0);
  static Mechanism identity();

  MechanismKind kind() const { return kind_; }
  double epsilon() const { return epsilon_; }
  double sensitivity() const { return sensitivity_; }
  // Admits an explicit output channel (randomized response, identity).
  bool is_finite() const { return kind_ != MechanismKind::kLaplace; }
  std::string name() const;

  double apply(double reward, Rng& rng) const;

  // Stochastic matrix over `input_alphabet`. Throws CapabilityError for Laplace
  // and DomainError for randomized response on a nonbinary alphabet.
  Channel channel(std::span<const double> input_alphabet) const;

  bool operator==(const Mechanism& other) const = default;

 private:
  Mechanism(MechanismKind kind, double epsilon, double sensitivity)
      : kind_(kind), epsilon_(epsilon), sensitivity_(sensitivity) {}

  MechanismKind kind_;
  double epsilon_;
  double sensitivity_;
};

// Pushforward of a reward distribution through a mechanism. Laplace outputs
// are continuous, so only their mean is known in closed form.
struct CorruptedDistribution {
  std::optional<RewardDistribution> distribution;
  bool sampled_only = false;
  double mean = 0.0;
};

// Keeps `bit` with probability e^eps/(1+e^eps). Throws DomainError for a
// nonbinary input or eps <= 0.
int randomized_response(int bit, double epsilon, Rng& rng);

// Bernoulli(p e^eps/(1+e^eps) + (1-p)/(1+e^eps)) for binary `f`.
CorruptedDistribution corrupt_distribution(const RewardDistribution& f, double epsilon);
CorruptedDistribution corrupt_distribution(const RewardDistribution& f, const Mechanism& mechanism);

// Environment whose arms are the randomized-response pushforwards of `env`'s.
Environment corrupt_environment(const Environment& env, const Mechanism& mechanism);

// Inverts the randomized-response mean map. May leave [0, 1].
double rr_debias(double observed_mean, double epsilon);

// value + Laplace(sensitivity / eps). Throws DomainError on nonpositive
// arguments.
double laplace_perturb(double value, double sensitivity, double epsilon, Rng& rng);
// value + F^{-1}(u) for the Laplace(scale) quantile function, u in (0, 1).
double laplace_quantile(double value, double scale, double u);

}  // namespace privbandit

#endif  // PRIVBANDIT_MECHANISM_H_
