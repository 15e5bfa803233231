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

#include "privbandit/auditor.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "privbandit/errors.h"
#include "privbandit/history_law.h"

namespace privbandit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEquivalenceTolerance = 1e-9;

void require_auditable(const Policy& policy) {
  if (!policy.auditable()) {
    throw CapabilityError(policy.name() + " is not auditable");
  }
}

// |ln p - ln q| with the 0/0 and p/0 conventions; NaN means "skip".
double abs_log_ratio(double p, double q) {
  if (p == 0.0 && q == 0.0) return std::numeric_limits<double>::quiet_NaN();
  if (p == 0.0 || q == 0.0) return kInf;
  return std::abs(std::log(p) - std::log(q));
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && out > cap / base) {
      throw EnumerationBudgetError("audit enumeration exceeds the budget");
    }
    out *= base;
  }
  return out;
}

void check_budget(std::uint64_t work, std::uint64_t cap) {
  if (work > cap) throw EnumerationBudgetError("audit enumeration exceeds the budget");
}

// Mixed-radix digits of `index`, most significant first.
void decode(std::uint64_t index, std::size_t radix, std::vector<std::size_t>& digits) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    digits[i] = static_cast<std::size_t>(index % radix);
    index /= radix;
  }
}

// Evaluates P(a^T | r) for one policy. Locally private policies sum over
// every privatized sequence z with weight prod M(z_t | r_t).
class SequenceEvaluator {
 public:
  SequenceEvaluator(const Policy& policy, std::span<const double> alphabet) : policy_(policy) {
    require_auditable(policy);
    if (policy.mechanism()) {
      channel_ = policy.mechanism()->channel(alphabet);
    }
  }

  double probability(std::span<const std::size_t> actions, std::span<const double> rewards) const {
    if (actions.empty()) return 1.0;
    if (rewards.size() + 1 < actions.size()) {
      throw DimensionError("reward sequence shorter than the action prefix");
    }
    ArmStatistics stats(policy_.num_arms());
    return recurse(actions, rewards, 0, stats);
  }

 private:
  double recurse(std::span<const std::size_t> actions, std::span<const double> rewards,
                 std::size_t t, ArmStatistics& stats) const {
    const std::size_t arm = actions[t];
    if (arm >= policy_.num_arms()) throw IndexError("action out of range");
    const double pi = policy_.action_distribution(stats)[arm];
    if (t + 1 == actions.size() || pi == 0.0) return pi;
    if (!channel_) {
      ArmStatistics next = stats;
      next.record(arm, rewards[t]);
      return pi * recurse(actions, rewards, t + 1, next);
    }
    const auto& row = channel_->rows[channel_->input_index(rewards[t])];
    double total = 0.0;
    for (std::size_t z = 0; z < row.size(); ++z) {
      if (row[z] == 0.0) continue;
      ArmStatistics next = stats;
      next.record(arm, channel_->outputs[z]);
      total += row[z] * recurse(actions, rewards, t + 1, next);
    }
    return pi * total;
  }

  const Policy& policy_;
  std::optional<Channel> channel_;
};

std::vector<double> sorted_alphabet(std::span<const double> alphabet) {
  std::vector<double> out(alphabet.begin(), alphabet.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw DomainError("audit alphabet is empty");
  return out;
}

std::vector<double> realized_rewards(std::span<const double> matrix, std::size_t horizon,
                                     std::span<const std::size_t> actions) {
  std::vector<double> r(actions.size());
  for (std::size_t t = 0; t < actions.size(); ++t) r[t] = matrix[actions[t] * horizon + t];
  return r;
}

double claimed_epsilon(const Policy& policy) {
  if (policy.kind() == PolicyKind::kUniform) return 0.0;
  if (policy.mechanism()) return policy.mechanism()->epsilon();
  return std::numeric_limits<double>::quiet_NaN();
}

AuditReport base_report(PrivacyDefinition definition, const Policy& policy,
                        std::vector<double> alphabet, std::size_t horizon) {
  AuditReport report;
  report.definition = definition;
  report.epsilon_claimed = claimed_epsilon(policy);
  report.horizon = horizon;
  report.num_arms = policy.num_arms();
  report.alphabet = std::move(alphabet);
  return report;
}

// Replaces the witness only on a strict improvement, so the first maximiser in
// enumeration order wins.
bool improves(const AuditReport& report, double value) {
  return !std::isnan(value) && (!report.witness.found || value > report.epsilon_measured);
}

// Shared by the reward-sequence and instantaneous audits: log P(a^t | r) for
// every action prefix and reward sequence of length t - 1.
double conditional_log_ratio(const SequenceEvaluator& eval, std::span<const std::size_t> actions,
                             std::span<const double> r1, std::span<const double> r2) {
  const double num1 = eval.probability(actions, r1);
  const double num2 = eval.probability(actions, r2);
  const auto prefix = actions.first(actions.size() - 1);
  const double den1 = eval.probability(prefix, r1);
  const double den2 = eval.probability(prefix, r2);
  // An unreachable prefix has no conditional law.
  if (den1 == 0.0 || den2 == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return abs_log_ratio(num1 / den1, num2 / den2);
}

}  // namespace

std::string definition_name(PrivacyDefinition definition) {
  switch (definition) {
    case PrivacyDefinition::kPanDp:
      return "pan-dp";
    case PrivacyDefinition::kInstantaneousDp:
      return "instantaneous-dp";
    case PrivacyDefinition::kLocalMechanism:
      return "local-mechanism";
    case PrivacyDefinition::kEnvironment:
      return "environment";
  }
  return "unknown";
}

PrivacyDefinition parse_definition(const std::string& name) {
  for (auto d : {PrivacyDefinition::kPanDp, PrivacyDefinition::kInstantaneousDp,
                 PrivacyDefinition::kLocalMechanism, PrivacyDefinition::kEnvironment}) {
    if (definition_name(d) == name) return d;
  }
  throw std::invalid_argument("unknown privacy definition: " + name);
}

double action_sequence_probability(const Policy& policy, std::span<const std::size_t> actions,
                                   std::span<const double> rewards) {
  std::vector<double> alphabet(rewards.begin(), rewards.end());
  if (alphabet.empty()) alphabet.push_back(0.0);
  SequenceEvaluator eval(policy, sorted_alphabet(alphabet));
  return eval.probability(actions, rewards);
}

AuditReport audit_pan_dp(const Policy& policy, std::span<const double> alphabet,
                         std::size_t horizon, std::uint64_t cap) {
  const auto symbols = sorted_alphabet(alphabet);
  SequenceEvaluator eval(policy, symbols);
  const std::size_t k = policy.num_arms();
  const std::size_t cells = k * horizon;
  const std::uint64_t matrices = checked_pow(symbols.size(), cells, cap);
  const std::uint64_t sequences = checked_pow(k, horizon, cap);
  check_budget(matrices > cap / sequences ? cap + 1 : matrices * sequences, cap);

  // log-free table of P(a^T | x) for every matrix and action sequence.
  std::vector<double> table(matrices * sequences);
  std::vector<std::size_t> digits(cells);
  std::vector<double> matrix(cells);
  std::vector<std::size_t> actions(horizon);
  for (std::uint64_t m = 0; m < matrices; ++m) {
    decode(m, symbols.size(), digits);
    for (std::size_t c = 0; c < cells; ++c) matrix[c] = symbols[digits[c]];
    for (std::uint64_t s = 0; s < sequences; ++s) {
      decode(s, k, actions);
      table[m * sequences + s] =
          eval.probability(actions, realized_rewards(matrix, horizon, actions));
    }
  }

  AuditReport report = base_report(PrivacyDefinition::kPanDp, policy, symbols, horizon);
  std::uint64_t stride = matrices;
  std::vector<std::uint64_t> strides(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    stride /= symbols.size();
    strides[c] = stride;
  }
  for (std::uint64_t m = 0; m < matrices; ++m) {
    decode(m, symbols.size(), digits);
    for (std::size_t c = 0; c < cells; ++c) {
      for (std::size_t v = 0; v < symbols.size(); ++v) {
        if (v == digits[c]) continue;
        const std::uint64_t other = m - digits[c] * strides[c] + v * strides[c];
        for (std::uint64_t s = 0; s < sequences; ++s) {
          const double value =
              abs_log_ratio(table[m * sequences + s], table[other * sequences + s]);
          if (!improves(report, value)) continue;
          report.epsilon_measured = value;
          auto& w = report.witness;
          w.found = true;
          w.actions.resize(horizon);
          decode(s, k, w.actions);
          w.data.resize(cells);
          for (std::size_t i = 0; i < cells; ++i) w.data[i] = symbols[digits[i]];
          w.neighbour_data = w.data;
          w.neighbour_data[c] = symbols[v];
        }
      }
    }
  }
  return report;
}

AuditReport audit_reward_sequence_dp(const Policy& policy, std::span<const double> alphabet,
                                     std::size_t horizon, std::uint64_t cap) {
  const auto symbols = sorted_alphabet(alphabet);
  SequenceEvaluator eval(policy, symbols);
  const std::size_t k = policy.num_arms();
  // Only r_1..r_{T-1} can influence a^T.
  const std::size_t length = horizon == 0 ? 0 : horizon - 1;
  const std::uint64_t rewards = checked_pow(symbols.size(), length, cap);
  const std::uint64_t sequences = checked_pow(k, horizon, cap);
  check_budget(rewards > cap / sequences ? cap + 1 : rewards * sequences, cap);

  std::vector<double> table(rewards * sequences);
  std::vector<std::size_t> digits(length);
  std::vector<double> r(length);
  std::vector<std::size_t> actions(horizon);
  for (std::uint64_t i = 0; i < rewards; ++i) {
    decode(i, symbols.size(), digits);
    for (std::size_t t = 0; t < length; ++t) r[t] = symbols[digits[t]];
    for (std::uint64_t s = 0; s < sequences; ++s) {
      decode(s, k, actions);
      table[i * sequences + s] = eval.probability(actions, r);
    }
  }

  AuditReport report = base_report(PrivacyDefinition::kPanDp, policy, symbols, horizon);
  std::vector<std::uint64_t> strides(length);
  std::uint64_t stride = rewards;
  for (std::size_t t = 0; t < length; ++t) {
    stride /= symbols.size();
    strides[t] = stride;
  }
  for (std::uint64_t i = 0; i < rewards; ++i) {
    decode(i, symbols.size(), digits);
    for (std::size_t t = 0; t < length; ++t) {
      for (std::size_t v = 0; v < symbols.size(); ++v) {
        if (v == digits[t]) continue;
        const std::uint64_t other = i - digits[t] * strides[t] + v * strides[t];
        for (std::uint64_t s = 0; s < sequences; ++s) {
          const double value =
              abs_log_ratio(table[i * sequences + s], table[other * sequences + s]);
          if (!improves(report, value)) continue;
          report.epsilon_measured = value;
          auto& w = report.witness;
          w.found = true;
          w.actions.resize(horizon);
          decode(s, k, w.actions);
          w.data.resize(length);
          for (std::size_t j = 0; j < length; ++j) w.data[j] = symbols[digits[j]];
          w.neighbour_data = w.data;
          w.neighbour_data[t] = symbols[v];
        }
      }
    }
  }
  return report;
}

AuditReport audit_instantaneous_dp(const Policy& policy, std::span<const double> alphabet,
                                   std::size_t horizon, std::uint64_t cap) {
  const auto symbols = sorted_alphabet(alphabet);
  SequenceEvaluator eval(policy, symbols);
  const std::size_t k = policy.num_arms();
  {
    const std::uint64_t rewards = checked_pow(symbols.size(), horizon == 0 ? 0 : horizon - 1, cap);
    const std::uint64_t sequences = checked_pow(k, horizon, cap);
    check_budget(rewards > cap / sequences ? cap + 1 : rewards * sequences, cap);
  }

  AuditReport report = base_report(PrivacyDefinition::kInstantaneousDp, policy, symbols, horizon);
  // Step t = 1 sees no rewards, so its conditional never moves.
  for (std::size_t t = 2; t <= horizon; ++t) {
    const std::size_t length = t - 1;
    const std::uint64_t rewards = checked_pow(symbols.size(), length, cap);
    const std::uint64_t sequences = checked_pow(k, t, cap);
    std::vector<std::size_t> digits(length);
    std::vector<double> r(length);
    std::vector<std::size_t> actions(t);
    for (std::uint64_t i = 0; i < rewards; ++i) {
      decode(i, symbols.size(), digits);
      for (std::size_t j = 0; j < length; ++j) r[j] = symbols[digits[j]];
      for (std::size_t pos = 0; pos < length; ++pos) {
        for (std::size_t v = 0; v < symbols.size(); ++v) {
          if (v == digits[pos]) continue;
          std::vector<double> r2 = r;
          r2[pos] = symbols[v];
          for (std::uint64_t s = 0; s < sequences; ++s) {
            decode(s, k, actions);
            const double value = conditional_log_ratio(eval, actions, r, r2);
            if (!improves(report, value)) continue;
            report.epsilon_measured = value;
            auto& w = report.witness;
            w.found = true;
            w.actions = actions;
            w.data = r;
            w.neighbour_data = r2;
          }
        }
      }
    }
  }
  return report;
}

AuditReport audit_channel(const Channel& channel) {
  AuditReport report;
  report.definition = PrivacyDefinition::kLocalMechanism;
  report.alphabet = channel.inputs;
  for (std::size_t x = 0; x < channel.rows.size(); ++x) {
    for (std::size_t y = 0; y < channel.rows.size(); ++y) {
      if (x == y) continue;
      for (std::size_t z = 0; z < channel.outputs.size(); ++z) {
        const double value = abs_log_ratio(channel.rows[x][z], channel.rows[y][z]);
        if (!improves(report, value)) continue;
        report.epsilon_measured = value;
        report.witness.found = true;
        report.witness.data = {channel.inputs[x]};
        report.witness.neighbour_data = {channel.inputs[y]};
        report.witness.output = channel.outputs[z];
      }
    }
  }
  return report;
}

AuditReport audit_local_mechanism(const Mechanism& mechanism, std::span<const double> alphabet) {
  AuditReport report = audit_channel(mechanism.channel(sorted_alphabet(alphabet)));
  report.epsilon_claimed = mechanism.epsilon();
  return report;
}

double mean_distance(const Environment& env1, const Environment& env2) {
  if (env1.num_arms() != env2.num_arms()) {
    throw DimensionError("environments have different numbers of arms");
  }
  const auto m1 = env1.means();
  const auto m2 = env2.means();
  double out = 0.0;
  for (std::size_t a = 0; a < m1.size(); ++a) out = std::max(out, std::abs(m1[a] - m2[a]));
  return out;
}

AuditReport audit_environment_privacy(const Policy& policy, const Environment& env1,
                                      const Environment& env2, std::size_t horizon,
                                      std::optional<double> rho, std::uint64_t cap) {
  require_auditable(policy);
  const double distance = rho.value_or(mean_distance(env1, env2));
  if (distance < 0.0 || std::isnan(distance)) throw DomainError("rho must be nonnegative");
  const Environment obs1 = observed_environment(policy, env1);
  const Environment obs2 = observed_environment(policy, env2);
  const auto alphabet = merged_alphabet(obs1, obs2);
  const auto law1 = history_law(policy, obs1, alphabet, horizon, cap);
  const auto law2 = history_law(policy, obs2, alphabet, horizon, cap);

  AuditReport report = base_report(PrivacyDefinition::kEnvironment, policy, alphabet, horizon);
  report.epsilon_claimed = std::numeric_limits<double>::quiet_NaN();
  report.rho = distance;
  if (law1 == law2) {
    report.identical_environments = true;
    return report;
  }
  if (distance == 0.0) {
    throw UndefinedRatioError("rho is 0 but the history laws differ");
  }
  std::size_t best = 0;
  for (std::size_t h = 0; h < law1.size(); ++h) {
    const double value = abs_log_ratio(law1[h], law2[h]) / distance;
    if (!improves(report, value)) continue;
    report.epsilon_measured = value;
    report.witness.found = true;
    best = h;
  }
  if (report.witness.found) {
    // Decode history index `best` in enumerate_histories order.
    std::vector<std::size_t> digits(2 * horizon);
    std::uint64_t index = best;
    for (std::size_t t = horizon; t-- > 0;) {
      digits[2 * t + 1] = static_cast<std::size_t>(index % alphabet.size());
      index /= alphabet.size();
      digits[2 * t] = static_cast<std::size_t>(index % policy.num_arms());
      index /= policy.num_arms();
    }
    for (std::size_t t = 0; t < horizon; ++t) {
      report.witness.actions.push_back(digits[2 * t]);
      report.witness.data.push_back(alphabet[digits[2 * t + 1]]);
    }
  }
  return report;
}

double witness_log_ratio(const Policy& policy, const AuditReport& report) {
  const auto& w = report.witness;
  if (!w.found) return 0.0;
  const auto symbols = sorted_alphabet(report.alphabet);
  SequenceEvaluator eval(policy, symbols);
  switch (report.definition) {
    case PrivacyDefinition::kPanDp: {
      // Outcome-matrix witnesses hold K*T cells; reward-sequence ones T-1.
      if (w.data.size() == report.num_arms * report.horizon) {
        const auto r1 = realized_rewards(w.data, report.horizon, w.actions);
        const auto r2 = realized_rewards(w.neighbour_data, report.horizon, w.actions);
        return abs_log_ratio(eval.probability(w.actions, r1), eval.probability(w.actions, r2));
      }
      return abs_log_ratio(eval.probability(w.actions, w.data),
                           eval.probability(w.actions, w.neighbour_data));
    }
    case PrivacyDefinition::kInstantaneousDp:
      return conditional_log_ratio(eval, w.actions, w.data, w.neighbour_data);
    default:
      throw std::invalid_argument("witness needs a channel or environments for this definition");
  }
}

double witness_log_ratio(const Channel& channel, const AuditReport& report) {
  const auto& w = report.witness;
  if (!w.found) return 0.0;
  return abs_log_ratio(channel.probability(w.data.at(0), *w.output),
                       channel.probability(w.neighbour_data.at(0), *w.output));
}

double witness_log_ratio(const Policy& policy, const Environment& env1, const Environment& env2,
                         const AuditReport& report) {
  const auto& w = report.witness;
  if (!w.found) return 0.0;
  const Environment obs1 = observed_environment(policy, env1);
  const Environment obs2 = observed_environment(policy, env2);
  // Standalone product of pi * f along the witnessed history.
  auto probability = [&](const Environment& env) {
    ArmStatistics stats(policy.num_arms());
    double p = 1.0;
    for (std::size_t t = 0; t < w.actions.size(); ++t) {
      const std::size_t a = w.actions[t];
      p *= policy.action_distribution(stats)[a] *
           env.arm(a).probability_of(w.data[t]).value_or(0.0);
      stats.record(a, w.data[t]);
    }
    return p;
  };
  return abs_log_ratio(probability(obs1), probability(obs2)) / report.rho;
}

EquivalenceReport verify_equivalence(const Policy& policy, std::span<const double> alphabet,
                                     std::size_t horizon, std::uint64_t cap) {
  EquivalenceReport out;
  out.outcome_epsilon = audit_pan_dp(policy, alphabet, horizon, cap).epsilon_measured;
  out.reward_epsilon = audit_reward_sequence_dp(policy, alphabet, horizon, cap).epsilon_measured;
  if (std::isinf(out.outcome_epsilon) || std::isinf(out.reward_epsilon)) {
    out.equal = out.outcome_epsilon == out.reward_epsilon;
  } else {
    out.equal = std::abs(out.outcome_epsilon - out.reward_epsilon) <= kEquivalenceTolerance;
  }
  return out;
}

CompositionReport verify_composition(const Policy& policy, std::span<const double> alphabet,
                                     std::size_t horizon, std::uint64_t cap) {
  CompositionReport out;
  out.horizon = horizon;
  out.pan_epsilon = audit_pan_dp(policy, alphabet, horizon, cap).epsilon_measured;
  out.instantaneous_epsilon = audit_instantaneous_dp(policy, alphabet, horizon, cap).epsilon_measured;
  out.instantaneous_within_twice_pan =
      out.instantaneous_epsilon <= 2.0 * out.pan_epsilon + kEquivalenceTolerance;
  out.pan_within_horizon_times_inst =
      out.pan_epsilon <=
      static_cast<double>(horizon) * out.instantaneous_epsilon + kEquivalenceTolerance;
  return out;
}

}  // namespace privbandit
