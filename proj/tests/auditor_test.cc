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

#include "privbandit/auditor.h"
#include "privbandit/bandit.h"
#include "privbandit/errors.h"
#include "privbandit/mechanism.h"
#include "privbandit/policy.h"
#include "privbandit/sweeps.h"

namespace privbandit {
namespace {

const std::vector<double> kBinary{0.0, 1.0};
const double kLn3 = std::log(3.0);

Environment bern(std::vector<double> means) { return Environment::bernoulli(means); }

Policy ldp_softmax(double beta, double eps) {
  return ldp_pipeline(Policy::softmax(2, beta), Mechanism::randomized_response(eps));
}

TEST(PanDpAuditTest, UniformIsZero) {
  for (std::size_t horizon = 1; horizon <= 3; ++horizon) {
    const auto r = audit_pan_dp(Policy::uniform(2), kBinary, horizon);
    EXPECT_EQ(r.epsilon_measured, 0.0);
    EXPECT_EQ(r.definition, PrivacyDefinition::kPanDp);
    EXPECT_EQ(r.epsilon_claimed, 0.0);
  }
}

TEST(PanDpAuditTest, LdpSoftmaxWithinMechanismBudget) {
  for (double beta : {1.0, 5.0, 20.0}) {
    const auto r = audit_pan_dp(ldp_softmax(beta, kLn3), kBinary, 3);
    EXPECT_LE(r.epsilon_measured, kLn3 + 1e-12) << beta;
    EXPECT_NEAR(r.epsilon_claimed, kLn3, 1e-15);
  }
}

TEST(PanDpAuditTest, SoftmaxRegressionFixture) {
  const auto first = audit_pan_dp(Policy::softmax(2, 5.0), kBinary, 2);
  const auto second = audit_pan_dp(Policy::softmax(2, 5.0), kBinary, 2);
  EXPECT_NEAR(first.epsilon_measured, 2.5, 1e-12);
  EXPECT_EQ(first.epsilon_measured, second.epsilon_measured);
  EXPECT_EQ(first.witness.data, second.witness.data);
  EXPECT_TRUE(std::isnan(first.epsilon_claimed));
}

TEST(PanDpAuditTest, WitnessShape) {
  const auto r = audit_pan_dp(Policy::softmax(2, 5.0), kBinary, 2);
  ASSERT_TRUE(r.witness.found);
  EXPECT_EQ(r.witness.actions.size(), 2u);
  ASSERT_EQ(r.witness.data.size(), 4u);
  int differing = 0;
  for (std::size_t i = 0; i < 4; ++i) differing += r.witness.data[i] != r.witness.neighbour_data[i];
  EXPECT_EQ(differing, 1);
}

TEST(PanDpAuditTest, Errors) {
  EXPECT_THROW(audit_pan_dp(Policy::ucb1(2), kBinary, 2), CapabilityError);
  EXPECT_THROW(audit_pan_dp(Policy::softmax(3, 1.0), kBinary, 3, 1000), EnumerationBudgetError);
}

TEST(InstantaneousAuditTest, UniformIsZero) {
  EXPECT_EQ(audit_instantaneous_dp(Policy::uniform(3), kBinary, 3).epsilon_measured, 0.0);
}

TEST(InstantaneousAuditTest, SoftmaxSingleSubstitution) {
  const auto r = audit_instantaneous_dp(Policy::softmax(2, 5.0), kBinary, 2);
  EXPECT_NEAR(r.epsilon_measured, 2.5, 1e-12);
  EXPECT_EQ(r.definition, PrivacyDefinition::kInstantaneousDp);
}

TEST(InstantaneousAuditTest, OneStepIsZero) {
  // The first action precedes every reward.
  EXPECT_EQ(audit_instantaneous_dp(Policy::softmax(2, 5.0), kBinary, 1).epsilon_measured, 0.0);
}

TEST(CompositionTest, BothDirectionsOnGrid) {
  for (std::size_t k : {2, 3}) {
    for (const auto& policy : audit_policy_grid(k)) {
      for (std::size_t horizon = 1; horizon <= 3; ++horizon) {
        const auto r = verify_composition(policy, kBinary, horizon);
        EXPECT_TRUE(r.holds()) << policy.name() << " K=" << k << " T=" << horizon;
      }
    }
  }
}

TEST(LocalMechanismAuditTest, Examples) {
  EXPECT_TRUE(std::isinf(audit_local_mechanism(Mechanism::identity(), kBinary).epsilon_measured));
  const auto one = audit_local_mechanism(Mechanism::randomized_response(1.0), kBinary);
  EXPECT_NEAR(one.epsilon_measured, 1.0, 1e-12);
  EXPECT_EQ(one.epsilon_claimed, 1.0);
  EXPECT_NEAR(audit_local_mechanism(Mechanism::randomized_response(kLn3), kBinary).epsilon_measured,
              1.098612, 1e-6);
  EXPECT_THROW(audit_local_mechanism(Mechanism::laplace(1.0), kBinary), CapabilityError);
}

TEST(EquivalenceTest, Examples) {
  const auto uniform = verify_equivalence(Policy::uniform(2), kBinary, 2);
  EXPECT_EQ(uniform.outcome_epsilon, 0.0);
  EXPECT_EQ(uniform.reward_epsilon, 0.0);
  EXPECT_TRUE(uniform.equal);
  const auto ldp = verify_equivalence(ldp_softmax(2.0, 1.0), kBinary, 2);
  EXPECT_TRUE(ldp.equal);
  EXPECT_NEAR(ldp.outcome_epsilon, ldp.reward_epsilon, 1e-9);
  EXPECT_GT(ldp.outcome_epsilon, 0.0);
}

TEST(EquivalenceTest, RandomPolicies) {
  for (const auto& policy : random_auditable_policies(2, 20, 1)) {
    EXPECT_TRUE(verify_equivalence(policy, kBinary, 2).equal);
  }
}

TEST(EnvironmentAuditTest, Example) {
  const auto r = audit_environment_privacy(Policy::uniform(2), bern({0.5, 0.5}), bern({0.75, 0.5}), 1);
  EXPECT_NEAR(r.rho, 0.25, 1e-15);
  EXPECT_NEAR(r.epsilon_measured, std::log(2.0) / 0.25, 1e-12);
  EXPECT_NEAR(r.epsilon_measured, 2.772589, 1e-6);
  EXPECT_FALSE(r.identical_environments);
}

TEST(EnvironmentAuditTest, ScalesInverselyWithRho) {
  const auto env1 = bern({0.5, 0.5});
  const auto env2 = bern({0.75, 0.5});
  const auto base = audit_environment_privacy(Policy::uniform(2), env1, env2, 1, 0.25);
  const auto doubled = audit_environment_privacy(Policy::uniform(2), env1, env2, 1, 0.5);
  EXPECT_EQ(doubled.epsilon_measured, base.epsilon_measured / 2.0);
}

TEST(EnvironmentAuditTest, IdenticalEnvironments) {
  const auto env = bern({0.3, 0.6});
  const auto r = audit_environment_privacy(Policy::softmax(2, 1.0), env, env, 2);
  EXPECT_EQ(r.epsilon_measured, 0.0);
  EXPECT_TRUE(r.identical_environments);
}

TEST(EnvironmentAuditTest, ZeroRhoWithDifferentLaws) {
  // Same means, different laws.
  const Environment a({RewardDistribution({0.0, 1.0}, {0.5, 0.5}), RewardDistribution::bernoulli(0.2)});
  const Environment b({RewardDistribution({0.0, 0.5, 1.0}, {0.25, 0.5, 0.25}),
                       RewardDistribution::bernoulli(0.2)});
  EXPECT_THROW(audit_environment_privacy(Policy::uniform(2), a, b, 1), UndefinedRatioError);
}

TEST(EnvironmentAuditTest, DisjointSupportsAreInfinite) {
  const auto r = audit_environment_privacy(Policy::uniform(2), bern({0.0, 0.5}), bern({1.0, 0.5}), 1);
  EXPECT_TRUE(std::isinf(r.epsilon_measured));
}

TEST(WitnessTest, ReproducesMeasuredEpsilon) {
  const std::vector<Policy> policies = {Policy::softmax(2, 5.0), Policy::softmax(2, 1.0, 0.2),
                                        ldp_softmax(3.0, 1.0), ldp_softmax(10.0, kLn3)};
  for (const auto& policy : policies) {
    for (std::size_t horizon = 1; horizon <= 3; ++horizon) {
      for (const auto& r : {audit_pan_dp(policy, kBinary, horizon),
                            audit_reward_sequence_dp(policy, kBinary, horizon),
                            audit_instantaneous_dp(policy, kBinary, horizon)}) {
        if (!r.witness.found) continue;
        EXPECT_NEAR(witness_log_ratio(policy, r), r.epsilon_measured, 1e-12)
            << policy.name() << " " << definition_name(r.definition) << " T=" << horizon;
      }
    }
  }
}

TEST(WitnessTest, ChannelAndEnvironment) {
  const auto channel = Mechanism::randomized_response(0.7).channel(kBinary);
  const auto c = audit_channel(channel);
  EXPECT_NEAR(witness_log_ratio(channel, c), c.epsilon_measured, 1e-12);

  const auto policy = Policy::softmax(2, 2.0);
  const auto env1 = bern({0.25, 0.5});
  const auto env2 = bern({0.5, 0.75});
  const auto e = audit_environment_privacy(policy, env1, env2, 2);
  EXPECT_NEAR(witness_log_ratio(policy, env1, env2, e), e.epsilon_measured, 1e-12);
}

TEST(PostProcessingTest, RandomStochasticMaps) {
  EXPECT_TRUE(sweep_post_processing(50, 9).passed());
}

TEST(DefinitionTest, NamesRoundTrip) {
  for (auto d : {PrivacyDefinition::kPanDp, PrivacyDefinition::kInstantaneousDp,
                 PrivacyDefinition::kLocalMechanism, PrivacyDefinition::kEnvironment}) {
    EXPECT_EQ(parse_definition(definition_name(d)), d);
  }
  EXPECT_THROW(parse_definition("renyi"), std::invalid_argument);
}

}  // namespace
}  // namespace privbandit
