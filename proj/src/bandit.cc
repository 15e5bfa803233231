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

#include "privbandit/bandit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "privbandit/errors.h"

namespace privbandit {
namespace {

constexpr double kSimplexTolerance = 1e-12;

bool same_symbol(double a, double b) { return std::abs(a - b) <= kSupportTolerance; }

}  // namespace

RewardDistribution::RewardDistribution(std::vector<double> support, std::vector<double> probs)
    : support_(std::move(support)), probs_(std::move(probs)) {
  if (support_.empty()) throw std::invalid_argument("reward distribution: empty support");
  if (support_.size() != probs_.size()) {
    throw DimensionError("reward distribution: support and probability lengths differ");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (!(support_[i] >= 0.0 && support_[i] <= 1.0)) {
      throw DomainError("reward distribution: support value " + std::to_string(support_[i]) +
                        " outside [0,1]");
    }
    if (!(probs_[i] >= 0.0)) throw DomainError("reward distribution: negative probability");
    for (std::size_t j = 0; j < i; ++j) {
      if (same_symbol(support_[i], support_[j])) {
        throw std::invalid_argument("reward distribution: duplicate support value");
      }
    }
    total += probs_[i];
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    throw DomainError("reward distribution: probabilities sum to " + std::to_string(total));
  }
}

RewardDistribution RewardDistribution::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("bernoulli parameter outside [0,1]");
  return RewardDistribution({0.0, 1.0}, {1.0 - p, p});
}

RewardDistribution RewardDistribution::point_mass(double value) {
  return RewardDistribution({value}, {1.0});
}

double RewardDistribution::mean() const {
  return std::inner_product(support_.begin(), support_.end(), probs_.begin(), 0.0);
}

std::optional<double> RewardDistribution::probability_of(double value) const {
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (same_symbol(support_[i], value)) return probs_[i];
  }
  return std::nullopt;
}

bool RewardDistribution::is_binary() const {
  return std::all_of(support_.begin(), support_.end(),
                     [](double v) { return same_symbol(v, 0.0) || same_symbol(v, 1.0); });
}

std::vector<double> RewardDistribution::probs_over(std::span<const double> alphabet) const {
  std::vector<double> out(alphabet.size(), 0.0);
  for (std::size_t i = 0; i < alphabet.size(); ++i) out[i] = probability_of(alphabet[i]).value_or(0.0);
  return out;
}

Environment::Environment(std::vector<RewardDistribution> arms) : arms_(std::move(arms)) {
  if (arms_.size() < 2) throw std::invalid_argument("environment: need at least two arms");
}

Environment Environment::bernoulli(std::span<const double> means) {
  std::vector<RewardDistribution> arms;
  arms.reserve(means.size());
  for (double p : means) arms.push_back(RewardDistribution::bernoulli(p));
  return Environment(std::move(arms));
}

const RewardDistribution& Environment::arm(std::size_t a) const {
  if (a >= arms_.size()) {
    throw IndexError("arm " + std::to_string(a) + " out of range for K=" +
                     std::to_string(arms_.size()));
  }
  return arms_[a];
}

std::vector<double> Environment::means() const {
  std::vector<double> out;
  out.reserve(arms_.size());
  for (const auto& arm : arms_) out.push_back(arm.mean());
  return out;
}

double Environment::optimal_mean() const {
  const auto mu = means();
  return *std::max_element(mu.begin(), mu.end());
}

std::vector<double> Environment::gaps() const {
  auto mu = means();
  const double best = *std::max_element(mu.begin(), mu.end());
  for (double& m : mu) m = best - m;
  return mu;
}

std::vector<std::size_t> Environment::optimal_arms() const {
  const auto gap = gaps();
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < gap.size(); ++a) {
    if (gap[a] <= kSupportTolerance) out.push_back(a);
  }
  return out;
}

std::vector<double> Environment::alphabet() const {
  std::vector<double> out;
  for (const auto& arm : arms_) {
    for (double v : arm.support()) {
      if (std::none_of(out.begin(), out.end(), [v](double w) { return same_symbol(v, w); })) {
        out.push_back(v);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Environment::operator==(const Environment& other) const {
  if (arms_.size() != other.arms_.size()) return false;
  auto alpha = alphabet();
  const auto other_alpha = other.alphabet();
  alpha.insert(alpha.end(), other_alpha.begin(), other_alpha.end());
  for (std::size_t a = 0; a < arms_.size(); ++a) {
    if (arms_[a].probs_over(alpha) != other.arms_[a].probs_over(alpha)) return false;
  }
  return true;
}

std::vector<std::uint64_t> History::pull_counts(std::size_t num_arms) const {
  std::vector<std::uint64_t> counts(num_arms, 0);
  for (const auto& step : steps_) {
    if (step.action >= num_arms) throw IndexError("history action out of range");
    ++counts[step.action];
  }
  return counts;
}

double sample_reward(const Environment& env, std::size_t arm, Rng& rng) {
  const auto& dist = env.arm(arm);
  if (dist.support().size() == 1) return dist.support().front();
  return dist.support()[rng.categorical(dist.probs())];
}

GeneratedOutcomes generate_outcomes(const Environment& env, std::size_t horizon, Rng& rng) {
  GeneratedOutcomes out(env.num_arms(), horizon);
  for (std::size_t t = 0; t < horizon; ++t) {
    for (std::size_t a = 0; a < env.num_arms(); ++a) out.at(a, t) = sample_reward(env, a, rng);
  }
  return out;
}

double expected_regret(const Environment& env, std::span<const double> pull_counts) {
  if (pull_counts.size() != env.num_arms()) {
    throw DimensionError("expected_regret: " + std::to_string(pull_counts.size()) +
                         " counts for K=" + std::to_string(env.num_arms()));
  }
  const auto gap = env.gaps();
  double regret = 0.0;
  for (std::size_t a = 0; a < gap.size(); ++a) {
    if (pull_counts[a] < 0.0) throw DomainError("expected_regret: negative pull count");
    regret += pull_counts[a] * gap[a];
  }
  return regret;
}

double expected_regret(const Environment& env, std::span<const std::uint64_t> pull_counts) {
  std::vector<double> counts(pull_counts.begin(), pull_counts.end());
  return expected_regret(env, std::span<const double>(counts));
}

std::uint64_t history_space_size(std::size_t num_arms, std::size_t alphabet_size,
                                 std::size_t horizon) {
  const std::uint64_t base = static_cast<std::uint64_t>(num_arms) * alphabet_size;
  std::uint64_t size = 1;
  for (std::size_t t = 0; t < horizon; ++t) {
    if (base != 0 && size > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    size *= base;
  }
  return size;
}

void enumerate_histories(std::size_t num_arms, std::span<const double> alphabet,
                         std::size_t horizon, const HistoryVisitor& visit, std::uint64_t cap) {
  const std::uint64_t size = history_space_size(num_arms, alphabet.size(), horizon);
  if (size > cap) {
    throw EnumerationBudgetError("history enumeration of " + std::to_string(size) +
                                 " states exceeds cap " + std::to_string(cap));
  }
  History history;
  std::function<void()> recurse = [&] {
    if (history.size() == horizon) {
      visit(history);
      return;
    }
    for (std::size_t a = 0; a < num_arms; ++a) {
      for (double r : alphabet) {
        history.push_back({a, r, std::nullopt});
        recurse();
        history.pop_back();
      }
    }
  };
  recurse();
}

std::vector<History> all_histories(std::size_t num_arms, std::span<const double> alphabet,
                                   std::size_t horizon, std::uint64_t cap) {
  std::vector<History> out;
  enumerate_histories(
      num_arms, alphabet, horizon, [&](const History& h) { out.push_back(h); }, cap);
  return out;
}

}  // namespace privbandit
