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

#include "privbandit/sweeps.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "privbandit/auditor.h"
#include "privbandit/bounds.h"
#include "privbandit/divergence.h"
#include "privbandit/history_law.h"
#include "privbandit/mechanism.h"
#include "privbandit/random.h"

namespace privbandit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTolerance = 1e-9;
const std::vector<double> kBinary{0.0, 1.0};

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// 0 * inf = 0: an arm that is never pulled contributes nothing.
double weighted(double pulls, double divergence) {
  return pulls == 0.0 ? 0.0 : pulls * divergence;
}

std::string join(std::span<const double> values) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
  out << ']';
  return out.str();
}

// All mean vectors in grid^K, first arm most significant.
std::vector<std::vector<double>> grid_points(const std::vector<double>& grid, std::size_t k) {
  std::vector<std::vector<double>> out{{}};
  for (std::size_t a = 0; a < k; ++a) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : out) {
      for (double g : grid) {
        auto p = prefix;
        p.push_back(g);
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  return out;
}

struct CachedLaw {
  std::vector<double> law;
  std::vector<double> pulls;
};

// Records one equality cell.
void record_equality(SweepResult& result, double lhs, double rhs, const std::string& cell) {
  double gap = std::abs(lhs - rhs);
  if (std::isinf(lhs) || std::isinf(rhs)) gap = lhs == rhs ? 0.0 : kInf;
  if (result.cells++ == 0 || gap > result.worst) {
    result.worst = gap;
    result.worst_cell = cell;
  }
  if (!(gap <= kTolerance) && result.failures++ == 0) result.first_failure = cell;
}

// Records one inequality cell with slack = rhs - lhs. `checker_agrees` is the
// verdict of the library predicate for the same cell.
void record_inequality(SweepResult& result, double slack, const std::string& cell,
                       bool checker_agrees = true) {
  if (result.cells++ == 0 || slack < result.worst) {
    result.worst = slack;
    result.worst_cell = cell;
  }
  if ((!(slack >= -kTolerance) || !checker_agrees) && result.failures++ == 0) {
    result.first_failure = cell;
  }
}

void record_check(SweepResult& result, bool ok, const std::string& cell) {
  ++result.cells;
  if (!ok && result.failures++ == 0) result.first_failure = cell;
}

double slack_of(double lhs, double rhs) {
  if (std::isinf(rhs)) return std::isinf(lhs) ? 0.0 : kInf;
  return rhs - lhs;
}

std::vector<double> random_simplex(std::size_t n, Rng& rng, double zero_chance) {
  std::vector<double> p(n);
  for (auto& x : p) x = rng.uniform() < zero_chance ? 0.0 : rng.uniform_open();
  if (std::accumulate(p.begin(), p.end(), 0.0) == 0.0) p[0] = 1.0;
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& x : p) x /= total;
  return p;
}

}  // namespace

std::vector<double> bernoulli_grid(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("grid step must lie in (0, 1]");
  const auto n = static_cast<std::size_t>(std::llround(1.0 / step));
  std::vector<double> grid;
  for (std::size_t i = 0; i <= n; ++i) grid.push_back(std::min(1.0, static_cast<double>(i) * step));
  if (grid.back() < 1.0) grid.push_back(1.0);
  return grid;
}

SweepResult sweep_lemma3(const GridSweepOptions& options) {
  const auto start = Clock::now();
  SweepResult result;
  result.name = "lemma3";
  const auto grid = bernoulli_grid(options.grid_step);
  for (std::size_t k : options.arms) {
    const auto points = grid_points(grid, k);
    std::vector<Environment> envs;
    for (const auto& p : points) envs.push_back(Environment::bernoulli(p));
    for (std::size_t horizon : options.horizons) {
      for (double beta : options.betas) {
        const Policy policy = Policy::softmax(k, beta);
        std::vector<CachedLaw> cache;
        for (const auto& env : envs) {
          cache.push_back({history_law(policy, env, kBinary, horizon),
                           expected_pull_counts(policy, env, horizon)});
        }
        for (std::size_t i = 0; i < envs.size(); ++i) {
          for (std::size_t j = 0; j < envs.size(); ++j) {
            const double lhs = kl(cache[i].law, cache[j].law);
            double rhs = 0.0;
            for (std::size_t a = 0; a < k; ++a) {
              rhs += weighted(cache[i].pulls[a], kl(envs[i].arm(a), envs[j].arm(a)));
            }
            std::ostringstream cell;
            cell << "K=" << k << " T=" << horizon << " beta=" << beta << " mu1=" << join(points[i])
                 << " mu2=" << join(points[j]);
            record_equality(result, lhs, rhs, cell.str());
          }
        }
      }
    }
  }
  result.seconds = elapsed(start);
  return result;
}

SweepResult sweep_lemma4(const GridSweepOptions& options) {
  const auto start = Clock::now();
  SweepResult result;
  result.name = "lemma4";
  const auto grid = bernoulli_grid(options.grid_step);
  for (std::size_t k : options.arms) {
    const auto points = grid_points(grid, k);
    std::vector<Environment> envs;
    for (const auto& p : points) envs.push_back(Environment::bernoulli(p));
    for (double epsilon : options.epsilons) {
      const Mechanism rr = Mechanism::randomized_response(epsilon);
      const double factor = local_privacy_kl_factor(epsilon);
      for (std::size_t horizon : options.horizons) {
        for (double beta : options.betas) {
          const Policy system = ldp_pipeline(Policy::softmax(k, beta), rr);
          std::vector<CachedLaw> cache;
          for (const auto& env : envs) {
            cache.push_back({history_law(system, observed_environment(system, env), kBinary, horizon),
                             expected_pull_counts(system, env, horizon)});
          }
          for (std::size_t i = 0; i < envs.size(); ++i) {
            for (std::size_t j = 0; j < envs.size(); ++j) {
              const double lhs = kl(cache[i].law, cache[j].law);
              double original = 0.0;
              for (std::size_t a = 0; a < k; ++a) {
                original += weighted(cache[i].pulls[a], kl(envs[i].arm(a), envs[j].arm(a)));
              }
              const double rhs = original == 0.0 ? 0.0 : factor * original;
              std::ostringstream cell;
              cell << "K=" << k << " T=" << horizon << " beta=" << beta << " eps=" << epsilon
                   << " mu1=" << join(points[i]) << " mu2=" << join(points[j]);
              record_inequality(result, slack_of(lhs, rhs), cell.str());
            }
          }
        }
      }
    }
  }
  result.seconds = elapsed(start);
  return result;
}

SweepResult sweep_lemma6(const std::vector<double>& ratio_bounds, std::size_t count,
                         std::uint64_t seed) {
  const auto start = Clock::now();
  SweepResult result;
  result.name = "lemma6";
  for (std::size_t b = 0; b < ratio_bounds.size(); ++b) {
    Rng rng(derive_seed(seed, b));
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t size = 2 + 2 * static_cast<std::size_t>(rng.next_u64() % 8);
      const auto pair = random_bounded_ratio_pair(size, ratio_bounds[b], rng);
      const auto report = verify_lemma6(ratio_bounds[b], pair);
      std::ostringstream cell;
      cell << "b=" << ratio_bounds[b] << " instance=" << i << " size=" << size;
      if (report.verdict == Verdict::kPreconditionFail) {
        record_check(result, false, cell.str() + " (precondition)");
      } else {
        record_inequality(result, report.slack, cell.str());
      }
    }
  }
  result.seconds = elapsed(start);
  return result;
}

SweepResult sweep_pinsker(std::size_t count, std::uint64_t seed) {
  const auto start = Clock::now();
  SweepResult result;
  result.name = "pinsker";
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 7);
    const auto p = random_simplex(n, rng, 0.1);
    const auto q = random_simplex(n, rng, 0.1);
    const double l1 = tv_l1(p, q);
    const double slack = slack_of(l1 * l1, 2.0 * kl(p, q));
    std::ostringstream cell;
    cell << "instance=" << i << " n=" << n;
    record_inequality(result, slack, cell.str(), pinsker_check(p, q));
  }
  result.seconds = elapsed(start);
  return result;
}

SweepResult sweep_bretagnolle_huber(std::size_t count, std::uint64_t seed) {
  const auto start = Clock::now();
  SweepResult result;
  result.name = "bretagnolle-huber";
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 7);
    const auto p = random_simplex(n, rng, 0.1);
    const auto q = random_simplex(n, rng, 0.1);
    double p_event = 0.0;
    double q_complement = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      if (rng.uniform() < 0.5) {
        p_event += p[x];
      } else {
        q_complement += q[x];
      }
    }
    const double divergence = kl(p, q);
    const double slack = (p_event + q_complement) - 0.5 * std::exp(-divergence);
    std::ostringstream cell;
    cell << "instance=" << i << " n=" << n;
    record_inequality(result, slack, cell.str(),
                      bretagnolle_huber(p_event, q_complement, divergence));
  }
  result.seconds = elapsed(start);
  return result;
}

std::vector<Policy> random_auditable_policies(std::size_t num_arms, std::size_t count,
                                              std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Policy> out;
  for (std::size_t i = 0; i < count; ++i) {
    const double beta = 10.0 * rng.uniform();
    const double prior = rng.uniform();
    const Policy base = Policy::softmax(num_arms, beta, prior);
    if (i % 2 == 0) {
      out.push_back(base);
    } else {
      const double epsilon = 0.1 + 2.9 * rng.uniform();
      out.push_back(ldp_pipeline(base, Mechanism::randomized_response(epsilon)));
    }
  }
  return out;
}

SweepResult sweep_equivalence(std::size_t count, std::uint64_t seed, std::size_t num_arms,
                              std::size_t horizon) {
  const auto start = Clock::now();
  SweepResult result;
  result.name = "equivalence";
  const auto policies = random_auditable_policies(num_arms, count, seed);
  for (std::size_t i = 0; i < policies.size(); ++i) {
    const auto report = verify_equivalence(policies[i], kBinary, horizon);
    std::ostringstream cell;
    cell << "policy=" << i << " (" << policies[i].name() << " beta=" << policies[i].beta()
         << ") outcome=" << report.outcome_epsilon << " reward=" << report.reward_epsilon;
    const double gap = report.equal ? 0.0 : std::abs(report.outcome_epsilon - report.reward_epsilon);
    ++result.cells;
    if (gap >= result.worst) {
      result.worst = gap;
      result.worst_cell = cell.str();
    }
    if (!report.equal && result.failures++ == 0) result.first_failure = cell.str();
  }
  result.seconds = elapsed(start);
  return result;
}

std::vector<Policy> audit_policy_grid(std::size_t num_arms) {
  std::vector<Policy> out{Policy::uniform(num_arms)};
  for (double beta : {0.0, 1.0, 5.0}) out.push_back(Policy::softmax(num_arms, beta));
  for (double epsilon : {0.5, 1.0, std::log(3.0)}) {
    for (double beta : {1.0, 5.0}) {
      out.push_back(
          ldp_pipeline(Policy::softmax(num_arms, beta), Mechanism::randomized_response(epsilon)));
    }
  }
  return out;
}

SweepResult sweep_composition(const std::vector<std::size_t>& arms,
                              const std::vector<std::size_t>& horizons) {
  const auto start = Clock::now();
  SweepResult result;
  result.name = "composition";
  for (std::size_t k : arms) {
    const auto policies = audit_policy_grid(k);
    for (std::size_t horizon : horizons) {
      for (std::size_t i = 0; i < policies.size(); ++i) {
        const auto report = verify_composition(policies[i], kBinary, horizon);
        std::ostringstream cell;
        cell << "K=" << k << " T=" << horizon << " policy=" << i << " (" << policies[i].name()
             << ") pan=" << report.pan_epsilon << " inst=" << report.instantaneous_epsilon;
        const double slack =
            std::min(slack_of(report.instantaneous_epsilon, 2.0 * report.pan_epsilon),
                     slack_of(report.pan_epsilon,
                              static_cast<double>(horizon) * report.instantaneous_epsilon));
        record_inequality(result, slack, cell.str(), report.holds());
      }
    }
  }
  result.seconds = elapsed(start);
  return result;
}

SweepResult sweep_auditor_exactness(const std::vector<double>& epsilons) {
  const auto start = Clock::now();
  SweepResult result;
  result.name = "auditor-exactness";
  const std::vector<double> grid =
      epsilons.empty() ? std::vector<double>{0.1, 0.5, 1.0, std::log(3.0), 2.0} : epsilons;
  for (double epsilon : grid) {
    const auto report =
        audit_local_mechanism(Mechanism::randomized_response(epsilon), kBinary);
    const double gap = std::abs(report.epsilon_measured - epsilon);
    std::ostringstream cell;
    cell << "rr eps=" << epsilon << " measured=" << report.epsilon_measured;
    ++result.cells;
    if (gap >= result.worst) {
      result.worst = gap;
      result.worst_cell = cell.str();
    }
    if (!(gap <= 1e-12) && result.failures++ == 0) result.first_failure = cell.str();
  }
  for (std::size_t k : {2, 3}) {
    const Policy uniform = Policy::uniform(k);
    const double pan = audit_pan_dp(uniform, kBinary, 2).epsilon_measured;
    const double inst = audit_instantaneous_dp(uniform, kBinary, 2).epsilon_measured;
    record_check(result, pan == 0.0 && inst == 0.0,
                 "uniform K=" + std::to_string(k) + " pan=" + std::to_string(pan) +
                     " inst=" + std::to_string(inst));
  }
  result.seconds = elapsed(start);
  return result;
}

SweepResult sweep_post_processing(std::size_t count, std::uint64_t seed) {
  const auto start = Clock::now();
  SweepResult result;
  result.name = "post-processing";
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const double epsilon = 0.1 + 2.9 * rng.uniform();
    const Channel base = Mechanism::randomized_response(epsilon).channel(kBinary);
    const std::size_t outputs = 1 + static_cast<std::size_t>(rng.next_u64() % 4);
    const bool deterministic = rng.uniform() < 0.3;
    std::vector<std::vector<double>> post(base.outputs.size());
    for (auto& row : post) {
      if (deterministic) {
        row.assign(outputs, 0.0);
        row[rng.next_u64() % outputs] = 1.0;
      } else {
        row = random_simplex(outputs, rng, 0.2);
      }
    }
    std::vector<double> labels(outputs);
    std::iota(labels.begin(), labels.end(), 0.0);
    const double before = audit_channel(base).epsilon_measured;
    const double after = audit_channel(compose(base, post, labels)).epsilon_measured;
    std::ostringstream cell;
    cell << "instance=" << i << " eps=" << epsilon << " outputs=" << outputs
         << (deterministic ? " deterministic" : "") << " after=" << after;
    record_inequality(result, before - after, cell.str());
  }
  result.seconds = elapsed(start);
  return result;
}

SweepResult sweep_monotonicity() {
  const auto start = Clock::now();
  SweepResult result;
  result.name = "monotonicity";
  const std::size_t k = 2;
  const double horizon = 1e4;
  const Environment env = Environment::bernoulli(std::vector<double>{0.75, 0.5});

  struct Family {
    std::string name;
    std::function<double(double eps, double T)> value;
    bool scales_with_sqrt_t;
  };
  const std::vector<Family> families = {
      {"local/rate-only",
       [&](double e, double t) { return minimax_lb_local(k, t, e).value; }, true},
      {"local/proof-constant",
       [&](double e, double t) {
         return minimax_lb_local(k, t, e, ConstantMode::proof_constant()).value;
       },
       false},
      {"instantaneous/rate-only",
       [&](double e, double t) { return minimax_lb_instantaneous(k, t, e).value; }, true},
      {"dp/appendix-derivation/rate-only",
       [&](double e, double t) {
         return minimax_lb_dp(k, t, e, 0.0, DpVariant::kAppendixDerivation,
                              ConstantMode::rate_only())
             .value;
       },
       true},
      {"dp/appendix-derivation/proof-constant",
       [&](double e, double t) { return minimax_lb_dp(k, t, e).value; }, false},
      {"dp/theorem-text/rate-only",
       [&](double e, double t) {
         return minimax_lb_dp(k, t, e, 0.0, DpVariant::kTheoremText, ConstantMode::rate_only())
             .value;
       },
       true},
      {"local-problem-dependent",
       [&](double e, double) { return problem_dependent_lb_local(env, e).value; }, false},
  };

  for (const auto& family : families) {
    double previous = kInf;
    for (int i = 1; i <= 40; ++i) {
      const double epsilon = 0.1 * i;
      const double value = family.value(epsilon, horizon);
      std::ostringstream cell;
      cell << family.name << " eps=" << epsilon << " value=" << value;
      record_check(result, value < previous, cell.str() + " (not strictly decreasing)");
      previous = value;
    }
    if (!family.scales_with_sqrt_t) continue;
    for (double epsilon : {0.1, 0.5, 1.0, 2.0, 4.0}) {
      const double base = family.value(epsilon, 100.0) / std::sqrt(100.0);
      for (double t : {400.0, 1e4, 1e6, 2.5e7}) {
        const double ratio = family.value(epsilon, t) / std::sqrt(t);
        std::ostringstream cell;
        cell << family.name << " eps=" << epsilon << " T=" << t << " ratio=" << ratio;
        record_check(result, std::abs(ratio - base) <= 1e-9 * std::abs(base),
                     cell.str() + " (not proportional to sqrt(T))");
      }
    }
  }
  result.seconds = elapsed(start);
  return result;
}

std::vector<SweepResult> run_all_sweeps() {
  return {sweep_lemma3(),          sweep_lemma4(),           sweep_lemma6(),
          sweep_pinsker(),         sweep_bretagnolle_huber(), sweep_auditor_exactness(),
          sweep_equivalence(),     sweep_composition(),      sweep_post_processing(),
          sweep_monotonicity()};
}

}  // namespace privbandit
