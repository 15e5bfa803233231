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

#ifndef PRIVBANDIT_ERRORS_H_
#define PRIVBANDIT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace privbandit {

// Arm index (or other index) out of range.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Vector length does not match the number of arms.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation (nonbinary input
// to randomized response, nonpositive epsilon, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Operation requested on a policy that cannot support it, e.g. exact action
// distributions of a sampling-only policy.
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Runtime contract broken, e.g. a locally private policy handed a history
// without privatized rewards.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Exhaustive enumeration would exceed the configured state budget.
class EnumerationBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Hard-instance gap exceeds 1/2 for the requested horizon.
class InfeasibleHorizonError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Environment without a unique optimal arm where one is required.
class DegenerateInstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Environment-privacy ratio with rho = 0 but differing history laws.
class UndefinedRatioError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed experiment/policy/environment configuration. `field` names the
// offending JSON path.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace privbandit

#endif  // PRIVBANDIT_ERRORS_H_
