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

#include "privbandit/mechanism.h"

#include <cmath>
#include <utility>

#include "privbandit/errors.h"

namespace privbandit {
namespace {

void require_positive_epsilon(double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
}

bool is_bit(double v) {
  return std::abs(v) <= kSupportTolerance || std::abs(v - 1.0) <= kSupportTolerance;
}

}  // namespace

double rr_keep_probability(double epsilon) {
  require_positive_epsilon(epsilon);
  if (std::isinf(epsilon)) return 1.0;
  return 1.0 / (1.0 + std::exp(-epsilon));
}

double rr_flip_probability(double epsilon) {
  require_positive_epsilon(epsilon);
  if (std::isinf(epsilon)) return 0.0;
  return 1.0 / (1.0 + std::exp(epsilon));
}

std::size_t Channel::input_index(double input) const {
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (std::abs(inputs[i] - input) <= kSupportTolerance) return i;
  }
  throw DomainError("channel: input symbol not in alphabet");
}

double Channel::probability(double input, double output) const {
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (std::abs(inputs[i] - input) > kSupportTolerance) continue;
    for (std::size_t j = 0; j < outputs.size(); ++j) {
      if (std::abs(outputs[j] - output) <= kSupportTolerance) return rows[i][j];
    }
  }
  return 0.0;
}

Channel compose(const Channel& channel, const std::vector<std::vector<double>>& post_map,
                std::vector<double> post_outputs) {
  if (post_map.size() != channel.outputs.size()) {
    throw DimensionError("compose: post-map needs one row per channel output");
  }
  Channel out{channel.inputs, std::move(post_outputs), {}};
  for (const auto& row : channel.rows) {
    std::vector<double> composed(out.outputs.size(), 0.0);
    for (std::size_t z = 0; z < row.size(); ++z) {
      if (post_map[z].size() != out.outputs.size()) {
        throw DimensionError("compose: post-map row length mismatch");
      }
      for (std::size_t y = 0; y < composed.size(); ++y) composed[y] += row[z] * post_map[z][y];
    }
    out.rows.push_back(std::move(composed));
  }
  return out;
}

Mechanism Mechanism::randomized_response(double epsilon) {
  require_positive_epsilon(epsilon);
  return Mechanism(MechanismKind::kRandomizedResponse, epsilon, 1.0);
}

Mechanism Mechanism::laplace(double epsilon, double sensitivity) {
  require_positive_epsilon(epsilon);
  if (!(sensitivity > 0.0)) throw DomainError("laplace: sensitivity must be > 0");
  return Mechanism(MechanismKind::kLaplace, epsilon, sensitivity);
}

Mechanism Mechanism::identity() {
  return Mechanism(MechanismKind::kIdentity, kInfiniteEpsilon, 0.0);
}

std::string Mechanism::name() const {
  switch (kind_) {
    case MechanismKind::kRandomizedResponse: return "rr";
    case MechanismKind::kLaplace: return "laplace";
    case MechanismKind::kIdentity: return "identity";
  }
  return "unknown";
}

double Mechanism::apply(double reward, Rng& rng) const {
  switch (kind_) {
    case MechanismKind::kRandomizedResponse: {
      if (!is_bit(reward)) throw DomainError("randomized response needs a binary reward");
      const int bit = reward > 0.5 ? 1 : 0;
      return privbandit::randomized_response(bit, epsilon_, rng);
    }
    case MechanismKind::kLaplace:
      return laplace_perturb(reward, sensitivity_, epsilon_, rng);
    case MechanismKind::kIdentity:
      return reward;
  }
  return reward;
}

Channel Mechanism::channel(std::span<const double> input_alphabet) const {
  Channel ch;
  ch.inputs.assign(input_alphabet.begin(), input_alphabet.end());
  switch (kind_) {
    case MechanismKind::kLaplace:
      throw CapabilityError("laplace mechanism has no finite channel");
    case MechanismKind::kIdentity:
      ch.outputs = ch.inputs;
      for (std::size_t i = 0; i < ch.inputs.size(); ++i) {
        std::vector<double> row(ch.inputs.size(), 0.0);
        row[i] = 1.0;
        ch.rows.push_back(std::move(row));
      }
      return ch;
    case MechanismKind::kRandomizedResponse: {
      for (double v : ch.inputs) {
        if (!is_bit(v)) throw DomainError("randomized response needs a binary alphabet");
      }
      ch.outputs = {0.0, 1.0};
      const double keep = rr_keep_probability(epsilon_);
      const double flip = rr_flip_probability(epsilon_);
      for (double v : ch.inputs) {
        ch.rows.push_back(v > 0.5 ? std::vector<double>{flip, keep}
                                  : std::vector<double>{keep, flip});
      }
      return ch;
    }
  }
  return ch;
}

int randomized_response(int bit, double epsilon, Rng& rng) {
  if (bit != 0 && bit != 1) throw DomainError("randomized response input must be 0 or 1");
  require_positive_epsilon(epsilon);
  if (std::isinf(epsilon)) return bit;
  return rng.uniform() < rr_keep_probability(epsilon) ? bit : 1 - bit;
}

CorruptedDistribution corrupt_distribution(const RewardDistribution& f, double epsilon) {
  if (!f.is_binary()) throw DomainError("corrupt_distribution: support must be binary");
  const double p = f.probability_of(1.0).value_or(0.0);
  const double q = p * rr_keep_probability(epsilon) + (1.0 - p) * rr_flip_probability(epsilon);
  return {RewardDistribution::bernoulli(q), false, q};
}

CorruptedDistribution corrupt_distribution(const RewardDistribution& f,
                                           const Mechanism& mechanism) {
  switch (mechanism.kind()) {
    case MechanismKind::kRandomizedResponse:
      return corrupt_distribution(f, mechanism.epsilon());
    case MechanismKind::kIdentity:
      return {f, false, f.mean()};
    case MechanismKind::kLaplace:
      return {std::nullopt, true, f.mean()};
  }
  return {};
}

Environment corrupt_environment(const Environment& env, const Mechanism& mechanism) {
  std::vector<RewardDistribution> arms;
  for (const auto& arm : env.arms()) {
    auto corrupted = corrupt_distribution(arm, mechanism);
    if (!corrupted.distribution) {
      throw CapabilityError("corrupt_environment: mechanism has no explicit pushforward");
    }
    arms.push_back(std::move(*corrupted.distribution));
  }
  return Environment(std::move(arms));
}

double rr_debias(double observed_mean, double epsilon) {
  require_positive_epsilon(epsilon);
  if (std::isinf(epsilon)) return observed_mean;
  const double e = std::exp(epsilon);
  return (observed_mean * (e + 1.0) - 1.0) / (e - 1.0);
}

double laplace_quantile(double value, double scale, double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("laplace quantile needs u in (0,1)");
  const double centred = u - 0.5;
  if (centred == 0.0) return value;
  const double magnitude = -scale * std::log1p(-2.0 * std::abs(centred));
  return centred < 0.0 ? value - magnitude : value + magnitude;
}

double laplace_perturb(double value, double sensitivity, double epsilon, Rng& rng) {
  require_positive_epsilon(epsilon);
  if (!(sensitivity > 0.0)) throw DomainError("laplace: sensitivity must be > 0");
  if (std::isinf(epsilon)) return value;
  return laplace_quantile(value, sensitivity / epsilon, rng.uniform_open());
}

}  // namespace privbandit
