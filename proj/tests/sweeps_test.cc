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

#include <vector>

#include <gtest/gtest.h>

#include "privbandit/sweeps.h"

namespace privbandit {
namespace {

TEST(BernoulliGridTest, Endpoints) {
  EXPECT_EQ(bernoulli_grid(0.25), (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  EXPECT_EQ(bernoulli_grid(0.5).size(), 3u);
}

TEST(SweepTest, Lemma3SmallGrid) {
  GridSweepOptions options;
  options.arms = {2};
  options.horizons = {1, 2};
  options.grid_step = 0.5;
  const auto r = sweep_lemma3(options);
  EXPECT_TRUE(r.passed()) << r.first_failure;
  EXPECT_EQ(r.cells, 81u * 3u * 2u);
  EXPECT_LE(r.worst, 1e-9);
}

TEST(SweepTest, Lemma4SmallGrid) {
  GridSweepOptions options;
  options.arms = {2};
  options.horizons = {2};
  options.grid_step = 0.5;
  const auto r = sweep_lemma4(options);
  EXPECT_TRUE(r.passed()) << r.first_failure;
  EXPECT_GE(r.worst, -1e-9);
}

TEST(SweepTest, RandomizedInequalities) {
  EXPECT_TRUE(sweep_lemma6({0.1, 0.5, 1.0}, 200).passed());
  EXPECT_TRUE(sweep_pinsker(200).passed());
  EXPECT_TRUE(sweep_bretagnolle_huber(200).passed());
}

TEST(SweepTest, Audits) {
  EXPECT_TRUE(sweep_auditor_exactness().passed());
  EXPECT_TRUE(sweep_equivalence(5).passed());
  EXPECT_TRUE(sweep_composition({2}, {1, 2}).passed());
}

TEST(SweepTest, Monotonicity) {
  const auto r = sweep_monotonicity();
  EXPECT_TRUE(r.passed()) << r.first_failure;
}

TEST(RandomPoliciesTest, SeededAndAuditable) {
  const auto a = random_auditable_policies(2, 10, 3);
  const auto b = random_auditable_policies(2, 10, 3);
  ASSERT_EQ(a.size(), 10u);
  EXPECT_EQ(a, b);
  for (const auto& p : a) EXPECT_TRUE(p.auditable());
}

}  // namespace
}  // namespace privbandit
