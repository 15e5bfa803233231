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

// JSON encodings of the library's value types.
//
// Environment:  {"arms": [{"support": [0, 1], "probs": [0.5, 0.5]}, ...]}
//               or the shorthand {"bernoulli": [0.75, 0.5]}
// Mechanism:    {"kind": "rr" | "laplace" | "identity", "epsilon": 1.0,
//                "sensitivity": 1.0}
// Policy:       {"kind": "softmax-empirical-mean", "num_arms": 2, "beta": 2.0,
//                "mechanism": {...}, "epsilon_schedule": [...]}
// History:      [[action, reward], [action, reward, privatized_reward], ...]
//
// Infinite numbers are written as the string "inf"; NaN as null. Decoding
// errors throw ConfigError naming the JSON path of the bad field.

#ifndef PRIVBANDIT_JSON_IO_H_
#define PRIVBANDIT_JSON_IO_H_

#include <cstddef>
#include <optional>
#include <string>

#include "json.hpp"
#include "privbandit/auditor.h"
#include "privbandit/bandit.h"
#include "privbandit/bounds.h"
#include "privbandit/divergence.h"
#include "privbandit/mechanism.h"
#include "privbandit/policy.h"

namespace privbandit {

using Json = nlohmann::json;

Json number_to_json(double value);
// Accepts numbers and the strings "inf" / "infinity".
double number_from_json(const Json& j, const std::string& path);

Json to_json(const RewardDistribution& f);
Json to_json(const Environment& env);
Json to_json(const History& history);
Json to_json(const Mechanism& mechanism);
Json to_json(const Policy& policy);
Json to_json(const DecompositionReport& report);
Json to_json(const AuditReport& report);
Json to_json(const BoundSpec& bound);

Environment environment_from_json(const Json& j, const std::string& path = "environment");
History history_from_json(const Json& j, const std::string& path = "history");
Mechanism mechanism_from_json(const Json& j, const std::string& path = "mechanism");
// `num_arms` fills in a missing "num_arms" field.
Policy policy_from_json(const Json& j, std::optional<std::size_t> num_arms = std::nullopt,
                        const std::string& path = "policy");

// Parses a JSON document; syntax errors become ConfigError("<source>").
Json parse_json(const std::string& text, const std::string& source);
Json read_json_file(const std::string& filename);

}  // namespace privbandit

#endif  // PRIVBANDIT_JSON_IO_H_
