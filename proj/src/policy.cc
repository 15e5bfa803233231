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

#include "privbandit/policy.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "privbandit/errors.h"

namespace privbandit {

std::string policy_kind_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kUniform: return "uniform";
    case PolicyKind::kSoftmax: return "softmax-empirical-mean";
    case PolicyKind::kUcb1: return "ucb1";
    case PolicyKind::kLdpSoftmax: return "ldp-softmax";
    case PolicyKind::kLdpUcb: return "ldp-ucb";
    case PolicyKind::kIdpNoisyUcb: return "idp-noisy-ucb";
  }
  return "unknown";
}

namespace {

void require_arms(std::size_t num_arms) {
  if (num_arms == 0) throw std::invalid_argument("policy: need at least one arm");
}

}  // namespace

Policy Policy::uniform(std::size_t num_arms) {
  require_arms(num_arms);
  return Policy(PolicyKind::kUniform, num_arms);
}

Policy Policy::softmax(std::size_t num_arms, double beta, double prior_mean) {
  require_arms(num_arms);
  if (!std::isfinite(beta)) throw DomainError("softmax: beta must be finite");
  Policy p(PolicyKind::kSoftmax, num_arms);
  p.beta_ = beta;
  p.prior_mean_ = prior_mean;
  return p;
}

Policy Policy::ucb1(std::size_t num_arms, double exploration) {
  require_arms(num_arms);
  if (!(exploration >= 0.0)) throw DomainError("ucb1: exploration constant must be >= 0");
  Policy p(PolicyKind::kUcb1, num_arms);
  p.exploration_ = exploration;
  return p;
}

Policy ldp_pipeline(const Policy& base, const Mechanism& mechanism) {
  Policy p = base;
  switch (base.kind()) {
    case PolicyKind::kSoftmax: p.kind_ = PolicyKind::kLdpSoftmax; break;
    case PolicyKind::kUcb1: p.kind_ = PolicyKind::kLdpUcb; break;
    default:
      throw std::invalid_argument("ldp_pipeline: base policy must be softmax or ucb1, got " +
                                  base.name());
  }
  p.mechanism_ = mechanism;
  return p;
}

Policy idp_noisy_ucb(std::size_t num_arms, std::vector<double> epsilon_schedule,
                     double exploration) {
  require_arms(num_arms);
  if (epsilon_schedule.empty()) throw std::invalid_argument("idp_noisy_ucb: empty schedule");
  for (double e : epsilon_schedule) {
    if (!(e > 0.0)) throw DomainError("idp_noisy_ucb: schedule entries must be > 0");
  }
  Policy p = Policy::ucb1(num_arms, exploration);
  p.kind_ = PolicyKind::kIdpNoisyUcb;
  p.epsilon_schedule_ = std::move(epsilon_schedule);
  return p;
}

double Policy::epsilon_at(std::uint64_t t) const {
  if (epsilon_schedule_.empty()) return 0.0;
  const std::uint64_t idx = std::min<std::uint64_t>(std::max<std::uint64_t>(t, 1),
                                                    epsilon_schedule_.size()) - 1;
  return epsilon_schedule_[idx];
}

bool Policy::auditable() const {
  switch (kind_) {
    case PolicyKind::kUniform:
    case PolicyKind::kSoftmax:
      return true;
    case PolicyKind::kLdpSoftmax:
      return mechanism_->is_finite();
    default:
      return false;
  }
}

ArmStatistics Policy::observe(const History& history) const {
  ArmStatistics stats(num_arms_);
  for (std::size_t t = 0; t < history.size(); ++t) {
    const auto& step = history[t];
    if (step.action >= num_arms_) throw IndexError("history action out of range for policy");
    if (reads_privatized()) {
      if (!step.privatized_reward) {
        throw ContractError("locally private policy: step " + std::to_string(t) +
                            " has no privatized reward");
      }
      stats.record(step.action, *step.privatized_reward);
    } else {
      stats.record(step.action, step.reward);
    }
  }
  return stats;
}

double Policy::consumed_mean(double sum, std::uint64_t count) const {
  const double mean = sum / static_cast<double>(count);
  if (kind_ == PolicyKind::kLdpUcb && mechanism_->kind() == MechanismKind::kRandomizedResponse) {
    return rr_debias(mean, mechanism_->epsilon());
  }
  return mean;
}

std::vector<double> Policy::action_distribution(const History& history) const {
  if (!auditable()) {
    throw CapabilityError(name() + " has no closed-form action distribution");
  }
  return action_distribution(observe(history));
}

std::vector<double> Policy::action_distribution(const ArmStatistics& stats) const {
  if (!auditable()) {
    throw CapabilityError(name() + " has no closed-form action distribution");
  }
  std::vector<double> probs(num_arms_, 1.0 / static_cast<double>(num_arms_));
  if (kind_ == PolicyKind::kUniform) return probs;

  std::vector<double> means(num_arms_);
  for (std::size_t a = 0; a < num_arms_; ++a) {
    means[a] = stats.counts[a] == 0 ? prior_mean_ : consumed_mean(stats.sums[a], stats.counts[a]);
  }
  const double top = *std::max_element(means.begin(), means.end());
  double total = 0.0;
  for (std::size_t a = 0; a < num_arms_; ++a) {
    probs[a] = std::exp(beta_ * (means[a] - top));
    total += probs[a];
  }
  for (double& p : probs) p /= total;
  return probs;
}

std::size_t Policy::ucb_choice(const ArmStatistics& stats, const std::vector<double>& sums) const {
  for (std::size_t a = 0; a < num_arms_; ++a) {
    if (stats.counts[a] == 0) return a;
  }
  const double log_t = std::log(static_cast<double>(stats.total));
  std::size_t best = 0;
  double best_index = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < num_arms_; ++a) {
    const double n = static_cast<double>(stats.counts[a]);
    const double index = consumed_mean(sums[a], stats.counts[a]) + std::sqrt(exploration_ * log_t / n);
    if (index > best_index) {
      best_index = index;
      best = a;
    }
  }
  return best;
}

std::size_t Policy::select_action(const ArmStatistics& stats, Rng& rng,
                                  PrivacyLedger* ledger) const {
  if (stats.counts.size() != num_arms_) {
    throw DimensionError("select_action: statistics for a different number of arms");
  }
  switch (kind_) {
    case PolicyKind::kUniform:
    case PolicyKind::kSoftmax:
    case PolicyKind::kLdpSoftmax:
      return rng.categorical(action_distribution(stats));
    case PolicyKind::kUcb1:
    case PolicyKind::kLdpUcb:
      return ucb_choice(stats, stats.sums);
    case PolicyKind::kIdpNoisyUcb: {
      const double epsilon = epsilon_at(stats.total + 1);
      if (ledger != nullptr) ledger->record(epsilon);
      const bool initialised =
          std::all_of(stats.counts.begin(), stats.counts.end(), [](auto n) { return n > 0; });
      if (!initialised || std::isinf(epsilon)) return ucb_choice(stats, stats.sums);
      // Rewards lie in [0, 1], so each arm's running sum has sensitivity 1.
      std::vector<double> noisy = stats.sums;
      for (double& s : noisy) s = laplace_perturb(s, 1.0, epsilon, rng);
      return ucb_choice(stats, noisy);
    }
  }
  return 0;
}

std::size_t Policy::select_action(const History& history, Rng& rng) const {
  return select_action(observe(history), rng);
}

}  // namespace privbandit
