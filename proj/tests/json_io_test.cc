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
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "privbandit/auditor.h"
#include "privbandit/bounds.h"
#include "privbandit/divergence.h"
#include "privbandit/errors.h"
#include "privbandit/json_io.h"

namespace privbandit {
namespace {

std::string field_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

TEST(NumberJsonTest, InfinityAndNan) {
  EXPECT_EQ(number_to_json(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_TRUE(number_to_json(std::nan("")).is_null());
  EXPECT_EQ(number_to_json(1.5), 1.5);
  EXPECT_TRUE(std::isinf(number_from_json(Json("inf"), "x")));
  EXPECT_TRUE(std::isinf(number_from_json(Json("infinity"), "x")));
  EXPECT_EQ(field_of([] { number_from_json(Json("big"), "x.y"); }), "x.y");
}

TEST(EnvironmentJsonTest, RoundTrip) {
  const Environment env({RewardDistribution({0.0, 0.5, 1.0}, {0.2, 0.3, 0.5}),
                         RewardDistribution::bernoulli(0.25)});
  const auto j = to_json(env);
  EXPECT_TRUE(j.contains("arms"));
  EXPECT_EQ(environment_from_json(j), env);
  EXPECT_EQ(environment_from_json(parse_json(j.dump(), "s")), env);
}

TEST(EnvironmentJsonTest, BernoulliShorthand) {
  const auto env = environment_from_json(Json::parse(R"({"bernoulli": [0.75, 0.5]})"));
  EXPECT_EQ(env, Environment::bernoulli(std::vector<double>{0.75, 0.5}));
}

TEST(EnvironmentJsonTest, Errors) {
  EXPECT_EQ(field_of([] { environment_from_json(Json::parse("{}")); }), "environment.arms");
  EXPECT_EQ(field_of([] {
              environment_from_json(Json::parse(
                  R"({"arms": [{"support": [0, 1], "probs": [0.5, 0.5]}, {"support": [0, 1]}]})"));
            }),
            "environment.arms[1].probs");
  EXPECT_EQ(field_of([] {
              environment_from_json(Json::parse(
                  R"({"arms": [{"support": [0, 1], "probs": [0.5, 0.6]}, {"support": [1], "probs": [1]}]})"));
            }),
            "environment.arms[0]");
  EXPECT_EQ(field_of([] {
              environment_from_json(Json::parse(R"({"arms": [{"support": [0, "a"], "probs": [1, 0]}]})"));
            }),
            "environment.arms[0].support[1]");
  EXPECT_EQ(field_of([] {
              environment_from_json(Json::parse(R"({"arms": [{"support": [1], "probs": [1]}]})"));
            }),
            "environment");
}

TEST(HistoryJsonTest, RoundTrip) {
  const History h({{0, 1.0, std::nullopt}, {1, 0.0, 1.0}});
  const auto j = to_json(h);
  EXPECT_EQ(j.dump(), "[[0,1.0],[1,0.0,1.0]]");
  EXPECT_EQ(history_from_json(j), h);
}

TEST(HistoryJsonTest, Errors) {
  EXPECT_EQ(field_of([] { history_from_json(Json::parse("[[0]]")); }), "history[0]");
  EXPECT_EQ(field_of([] { history_from_json(Json::parse("[[0, 1], [-1, 0]]")); }), "history[1][0]");
  EXPECT_EQ(field_of([] { history_from_json(Json::parse("{}")); }), "history");
}

TEST(MechanismJsonTest, RoundTrip) {
  for (const auto& m : {Mechanism::randomized_response(1.0), Mechanism::laplace(0.5, 2.0),
                        Mechanism::identity()}) {
    EXPECT_EQ(mechanism_from_json(to_json(m)), m);
  }
  EXPECT_EQ(mechanism_from_json(Json::parse(R"({"kind": "randomized-response", "epsilon": 2})")),
            Mechanism::randomized_response(2.0));
}

TEST(MechanismJsonTest, Errors) {
  EXPECT_EQ(field_of([] { mechanism_from_json(Json::parse(R"({"kind": "rr"})")); }),
            "mechanism.epsilon");
  EXPECT_EQ(field_of([] { mechanism_from_json(Json::parse(R"({"kind": "rr", "epsilon": -1})")); }),
            "mechanism.epsilon");
  EXPECT_EQ(field_of([] { mechanism_from_json(Json::parse(R"({"kind": "gauss", "epsilon": 1})")); }),
            "mechanism.kind");
}

TEST(PolicyJsonTest, RoundTrip) {
  const std::vector<Policy> policies = {
      Policy::uniform(3),
      Policy::softmax(2, 2.5, 0.25),
      Policy::ucb1(4, 1.5),
      ldp_pipeline(Policy::softmax(2, 2.0), Mechanism::randomized_response(1.0)),
      ldp_pipeline(Policy::ucb1(2), Mechanism::laplace(1.0)),
      idp_noisy_ucb(2, {0.5, 1.0}, 2.0),
  };
  for (const auto& p : policies) EXPECT_EQ(policy_from_json(to_json(p)), p) << p.name();
}

TEST(PolicyJsonTest, DocumentedExample) {
  const auto p = policy_from_json(
      Json::parse(R"({"kind":"ldp-softmax","beta":2.0,"mechanism":{"kind":"rr","epsilon":1.0}})"), 2);
  EXPECT_EQ(p.kind(), PolicyKind::kLdpSoftmax);
  EXPECT_EQ(p.beta(), 2.0);
  EXPECT_EQ(*p.mechanism(), Mechanism::randomized_response(1.0));
}

TEST(PolicyJsonTest, Errors) {
  EXPECT_EQ(field_of([] { policy_from_json(Json::parse(R"({"kind": "ucb1"})")); }),
            "policy.num_arms");
  EXPECT_EQ(field_of([] { policy_from_json(Json::parse(R"({"kind": "thompson"})"), 2); }),
            "policy.kind");
  EXPECT_EQ(field_of([] {
              policy_from_json(Json::parse(R"({"kind": "ldp-softmax", "mechanism": {"kind": "rr"}})"), 2);
            }),
            "policy.mechanism.epsilon");
  EXPECT_EQ(field_of([] { policy_from_json(Json::parse(R"({"kind": "idp-noisy-ucb"})"), 2); }),
            "policy.epsilon_schedule");
  EXPECT_EQ(field_of([] { policy_from_json(Json::parse(R"({"kind": "ucb1", "exploration": -1})"), 2); }),
            "policy");
  EXPECT_EQ(field_of([] { policy_from_json(Json::parse(R"({"kind": "softmax", "beta": "x"})"), 2); }),
            "policy.beta");
}

TEST(ReportJsonTest, AuditReport) {
  const auto r = audit_local_mechanism(Mechanism::randomized_response(1.0), std::vector<double>{0, 1});
  const auto j = to_json(r);
  EXPECT_EQ(j["definition"], "local-mechanism");
  EXPECT_NEAR(j["epsilon_measured"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(j["epsilon_claimed"], 1.0);
  EXPECT_TRUE(j["witness"].contains("output"));
  const auto id = to_json(audit_local_mechanism(Mechanism::identity(), std::vector<double>{0, 1}));
  EXPECT_EQ(id["epsilon_measured"], "inf");
}

TEST(ReportJsonTest, BoundAndDecomposition) {
  const auto b = to_json(minimax_lb_local(2, 10000, 1.0));
  EXPECT_EQ(b["regime"], "local");
  EXPECT_EQ(b["K"], 2);
  EXPECT_EQ(b["constant"], "rate-only");
  EXPECT_NEAR(b["value"].get<double>(), 29.0988, 1e-4);
  const auto d = to_json(verify_lemma3(Policy::softmax(2, 1.0),
                                       Environment::bernoulli(std::vector<double>{0.5, 0.5}),
                                       Environment::bernoulli(std::vector<double>{0.5, 0.9}), 2));
  for (const char* key : {"lhs", "rhs", "slack", "witness", "verdict"}) EXPECT_TRUE(d.contains(key));
  EXPECT_EQ(d["verdict"], "PASS");
}

TEST(ReadJsonFileTest, MissingFile) {
  EXPECT_EQ(field_of([] { read_json_file("/nonexistent/file.json"); }), "/nonexistent/file.json");
}

}  // namespace
}  // namespace privbandit
