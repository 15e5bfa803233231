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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "privbandit/bandit.h"
#include "privbandit/bounds.h"
#include "privbandit/divergence.h"
#include "privbandit/errors.h"

namespace privbandit {
namespace {

const double kE = std::exp(1.0);

TEST(LocalBoundTest, Examples) {
  EXPECT_NEAR(minimax_lb_local(2, 10000, 1.0).value, 100.0 / (2.0 * (kE - 1.0)), 1e-12);
  EXPECT_NEAR(minimax_lb_local(2, 10000, 1.0).value, 29.0988, 1e-4);
  const auto proof = minimax_lb_local(2, 10000, 1.0, ConstantMode::proof_constant());
  EXPECT_NEAR(proof.value, 29.0988 / (4.0 * std::exp(4.0)), 1e-5);
  EXPECT_NEAR(proof.value, 0.13324, 1e-5);
  EXPECT_NEAR(minimax_lb_local(2, 10000, 1.0, ConstantMode::custom_value(2.0)).value,
              2.0 * 29.0988, 2e-4);
}

TEST(LocalBoundTest, VanishesAsEpsilonGrows) {
  double previous = minimax_lb_local(2, 10000, 1.0).value;
  for (double eps : {2.0, 5.0, 10.0, 20.0}) {
    const double value = minimax_lb_local(2, 10000, eps).value;
    EXPECT_LT(value, previous);
    EXPECT_GT(value, 0.0);
    previous = value;
  }
  EXPECT_EQ(minimax_lb_local(2, 10000, kInfiniteEpsilon).value, 0.0);
}

TEST(LocalBoundTest, ThresholdWarning) {
  EXPECT_TRUE(minimax_lb_local(2, 10000, 1.0).warnings.empty());
  EXPECT_FALSE(minimax_lb_local(10, 0.5, 0.1).warnings.empty());
}

TEST(LocalBoundTest, Errors) {
  EXPECT_THROW(minimax_lb_local(2, 100, 0.0), DomainError);
  EXPECT_THROW(minimax_lb_local(2, -1, 1.0), DomainError);
}

TEST(InstantaneousBoundTest, Examples) {
  EXPECT_NEAR(minimax_lb_instantaneous(2, 10000, 1.0).value,
              std::sqrt(10000.0 / (2.0 * (kE * kE - 1.0))), 1e-12);
  EXPECT_NEAR(minimax_lb_instantaneous(2, 10000, 1.0).value, 27.975, 1e-3);
  EXPECT_EQ(minimax_lb_instantaneous(2, 0, 1.0).value, 0.0);
}

TEST(InstantaneousBoundTest, ProofConstantFallsBackWithWarning) {
  const auto b = minimax_lb_instantaneous(2, 10000, 1.0, ConstantMode::proof_constant());
  EXPECT_NEAR(b.value, minimax_lb_instantaneous(2, 10000, 1.0).value, 1e-12);
  EXPECT_FALSE(b.warnings.empty());
}

TEST(InstantaneousBoundTest, AdvisoryRange) {
  EXPECT_TRUE(minimax_lb_instantaneous(2, 10000, 1.0).warnings.empty());
  EXPECT_FALSE(minimax_lb_instantaneous(2, 10000, 1.5).warnings.empty());
  EXPECT_GT(minimax_lb_instantaneous(2, 10000, 1.5).value, 0.0);
}

TEST(InstantaneousBoundTest, RatioToLocalBound) {
  for (int i = 1; i <= 20; ++i) {
    const double eps = 0.1 * i;
    const double local = minimax_lb_local(2, 10000, eps).value;
    const double inst = minimax_lb_instantaneous(2, 10000, eps).value;
    const double expected = std::sqrt(2.0 * eps * (std::exp(2.0 * eps) - 1.0)) /
                            (std::min(2.0, std::exp(eps)) * (std::exp(eps) - 1.0));
    EXPECT_NEAR(local / inst, expected, 1e-12 * expected) << eps;
  }
}

TEST(DpBoundTest, Examples) {
  const double expected = (1.0 / (8.0 * std::exp(3.0))) * std::sqrt(10000.0 * std::log(2.0)) *
                          std::pow(2.0, -0.5);
  EXPECT_NEAR(minimax_lb_dp(2, 10000, 1.0).value, expected, 1e-12);
  EXPECT_NEAR(minimax_lb_dp(2, 10000, 1.0).value, 0.36638, 1e-5);
  EXPECT_NEAR(minimax_lb_dp(2, 10000, 1.0, 0.0, DpVariant::kTheoremText).value, expected, 1e-12);
}

TEST(DpBoundTest, LipschitzBudgetRatio) {
  const double c0 = minimax_lb_dp(2, 10000, 1.0, 0.0).value;
  const double c1 = minimax_lb_dp(2, 10000, 1.0, 1.0).value;
  EXPECT_NEAR(c1 / c0, std::exp(-3.0), 1e-14);
}

TEST(DpBoundTest, TheoremTextBlowsUpAsEpsilonVanishes) {
  double previous = minimax_lb_dp(2, 10000, 0.1, 0.0, DpVariant::kTheoremText).value;
  for (double eps : {0.05, 0.02, 0.01, 0.005}) {
    const double value = minimax_lb_dp(2, 10000, eps, 0.0, DpVariant::kTheoremText).value;
    EXPECT_GT(value, previous) << eps;
    previous = value;
  }
  EXPECT_GT(previous, 1e6);
}

TEST(DpBoundTest, RateOnlyDropsLeadingConstant) {
  EXPECT_NEAR(minimax_lb_dp(2, 10000, 1.0, 0.0, DpVariant::kAppendixDerivation,
                            ConstantMode::rate_only())
                  .value,
              8.0 * minimax_lb_dp(2, 10000, 1.0).value, 1e-12);
}

TEST(DpBoundTest, VariantNames) {
  EXPECT_EQ(parse_dp_variant(dp_variant_name(DpVariant::kTheoremText)), DpVariant::kTheoremText);
  EXPECT_EQ(parse_dp_variant("appendix-derivation"), DpVariant::kAppendixDerivation);
  EXPECT_THROW(parse_dp_variant("table"), std::invalid_argument);
}

TEST(ProblemDependentTest, LocalCoefficient) {
  const auto env = Environment::bernoulli(std::vector<double>{0.75, 0.5});
  const double kl_value = bernoulli_kl(0.5, 0.75);
  const auto b = problem_dependent_lb_local(env, 1.0);
  EXPECT_NEAR(b.value, 0.25 / (8.0 * (kE - 1.0) * (kE - 1.0) * kl_value), 1e-12);
  EXPECT_NEAR(b.value, 0.073582, 5e-6);
  EXPECT_EQ(b.tag, "problem-dependent");
}

TEST(ProblemDependentTest, LaiRobbinsAndLargeEpsilon) {
  const auto env = Environment::bernoulli(std::vector<double>{0.75, 0.5});
  EXPECT_NEAR(problem_dependent_lb_nonprivate(env).value, 1.73804, 5e-5);
  EXPECT_LT(problem_dependent_lb_local(env, 20.0).value, 1e-15);
  EXPECT_EQ(problem_dependent_lb_local(env, kInfiniteEpsilon).value, 0.0);
}

TEST(ProblemDependentTest, EdgeCases) {
  EXPECT_THROW(problem_dependent_lb_local(Environment::bernoulli(std::vector<double>{0.5, 0.5}), 1.0),
               DegenerateInstanceError);
  // Arm 1 puts mass on 0, which the optimal arm never emits.
  const Environment disjoint({RewardDistribution::point_mass(1.0), RewardDistribution::bernoulli(0.5)});
  const auto b = problem_dependent_lb_local(disjoint, 1.0);
  EXPECT_FALSE(b.warnings.empty());
  EXPECT_EQ(b.value, 0.0);
}

TEST(ThresholdTest, Examples) {
  EXPECT_NEAR(threshold(2, 1.0, Regime::kLocal), 1.0 / (4.0 * (kE - 1.0) * (kE - 1.0)), 1e-15);
  EXPECT_NEAR(threshold(2, 1.0, Regime::kLocal), 0.084670, 5e-6);
  EXPECT_NEAR(threshold(5, 1.0, Regime::kLocal), 4.0 * threshold(2, 1.0, Regime::kLocal), 1e-15);
  EXPECT_NEAR(threshold(2, 1.0, Regime::kDp), std::log(2.0) / (kE * kE), 1e-15);
  EXPECT_NEAR(threshold(2, 1.0, Regime::kDp), 0.093807, 1e-6);
}

TEST(HardInstanceTest, LocalExample) {
  const auto pair = hard_instance_pair(2, 100, 1.0, Regime::kLocal);
  EXPECT_NEAR(pair.gap, 0.029099, 1e-6);
  EXPECT_NEAR(pair.env1.arm(0).mean(), 0.5 + pair.gap, 1e-15);
  EXPECT_NEAR(pair.env2.arm(1).mean(), 0.5 + 2.0 * pair.gap, 1e-15);
}

TEST(HardInstanceTest, StructureOnGrid) {
  for (std::size_t k : {2, 3, 5}) {
    for (double eps : {0.5, 1.0, 2.0}) {
      for (double horizon : {100.0, 1000.0, 20000.0}) {
        for (Regime regime : {Regime::kLocal, Regime::kDp}) {
          const auto pair = hard_instance_pair(k, horizon, eps, regime);
          EXPECT_LE(pair.gap, 0.5);
          EXPECT_EQ(pair.target_arm, k - 1);
          EXPECT_EQ(pair.env1.optimal_arms(), std::vector<std::size_t>{0});
          EXPECT_EQ(pair.env2.optimal_arms(), std::vector<std::size_t>{k - 1});
          for (std::size_t a = 0; a + 1 < k; ++a) {
            EXPECT_EQ(pair.env1.arm(a).probs(), pair.env2.arm(a).probs());
          }
          EXPECT_NE(pair.env1.arm(k - 1).probs(), pair.env2.arm(k - 1).probs());
        }
      }
    }
  }
}

TEST(HardInstanceTest, InfeasibleHorizon) {
  EXPECT_THROW(hard_instance_pair(2, 0.01, 1.0, Regime::kLocal), InfeasibleHorizonError);
  EXPECT_THROW(hard_instance_pair(10, 1.0, 0.1, Regime::kLocal), InfeasibleHorizonError);
}

TEST(HardInstanceTest, DpGap) {
  const double gap = hard_instance_gap(2, 100, 1.0, Regime::kDp);
  EXPECT_NEAR(gap, std::sqrt(std::log(2.0) / (4.0 * 100.0 * kE * kE)), 1e-15);
}

TEST(BayesianAliasTest, MatchMinimaxValues) {
  for (double eps : {0.5, 1.0}) {
    const auto local = bayesian_lb_local(2, 10000, eps);
    EXPECT_EQ(local.value, minimax_lb_local(2, 10000, eps).value);
    EXPECT_EQ(local.tag, "bayesian");
    EXPECT_TRUE(local.bounded_reward_precondition);
    EXPECT_EQ(bayesian_lb_instantaneous(2, 10000, eps).value,
              minimax_lb_instantaneous(2, 10000, eps).value);
    EXPECT_EQ(bayesian_lb_dp(2, 10000, eps).value, minimax_lb_dp(2, 10000, eps).value);
  }
  EXPECT_EQ(minimax_lb_local(2, 10000, 1.0).tag, "minimax");
}

TEST(MonotonicityTest, StrictlyDecreasingInEpsilon) {
  for (int i = 1; i < 40; ++i) {
    const double a = 0.1 * i;
    const double b = 0.1 * (i + 1);
    EXPECT_GT(minimax_lb_local(2, 10000, a).value, minimax_lb_local(2, 10000, b).value);
    EXPECT_GT(minimax_lb_instantaneous(2, 10000, a).value,
              minimax_lb_instantaneous(2, 10000, b).value);
    EXPECT_GT(minimax_lb_dp(2, 10000, a).value, minimax_lb_dp(2, 10000, b).value);
  }
}

TEST(MonotonicityTest, SquareRootScaling) {
  for (double eps : {0.3, 1.0, 2.5}) {
    EXPECT_NEAR(minimax_lb_local(3, 40000, eps).value / minimax_lb_local(3, 10000, eps).value,
                2.0, 1e-9);
    EXPECT_NEAR(minimax_lb_instantaneous(3, 40000, eps).value /
                    minimax_lb_instantaneous(3, 10000, eps).value,
                2.0, 1e-9);
    EXPECT_NEAR(minimax_lb_dp(3, 40000, eps, 0.0, DpVariant::kAppendixDerivation,
                              ConstantMode::rate_only())
                        .value /
                    minimax_lb_dp(3, 10000, eps, 0.0, DpVariant::kAppendixDerivation,
                                  ConstantMode::rate_only())
                        .value,
                2.0, 1e-9);
  }
}

TEST(NonprivateBoundTest, Rate) {
  EXPECT_NEAR(minimax_lb_nonprivate(3, 100).value, std::sqrt(200.0), 1e-12);
}

TEST(RegimeTest, NamesRoundTrip) {
  for (Regime r : {Regime::kLocal, Regime::kInstantaneous, Regime::kDp, Regime::kNonprivateMinimax,
                   Regime::kNonprivateProblemDependent, Regime::kLocalProblemDependent}) {
    EXPECT_EQ(parse_regime(regime_name(r)), r);
  }
  EXPECT_THROW(parse_regime("shuffle"), std::invalid_argument);
}

}  // namespace
}  // namespace privbandit
