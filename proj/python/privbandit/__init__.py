# Copyright 2026 The privbandit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Private multi-armed bandits: simulation, exact audits and lower bounds.

Environments, policies and mechanisms are plain dicts in the JSON layout the
command-line tool reads, e.g. ``{"bernoulli": [0.75, 0.5]}`` or
``{"kind": "ldp-softmax", "beta": 2.0, "mechanism": {"kind": "rr", "epsilon": 1.0}}``.
Infinite values may be given as ``math.inf``.
"""

import json
import math

from privbandit import _core
from privbandit._core import (
    CapabilityError,
    ConfigError,
    EnumerationBudgetError,
    bernoulli_kl,
    bretagnolle_huber,
    corrupt_mean,
    kl,
    pinsker_check,
    rr_debias,
    rr_keep_probability,
    threshold,
    tv_l1,
)

__all__ = [
    "CapabilityError",
    "ConfigError",
    "EnumerationBudgetError",
    "audit_environment_privacy",
    "audit_instantaneous_dp",
    "audit_local_mechanism",
    "audit_pan_dp",
    "bernoulli_kl",
    "bretagnolle_huber",
    "corrupt_mean",
    "expected_regret",
    "hard_instance_pair",
    "history_probability",
    "kl",
    "kl_history",
    "minimax_bound",
    "pinsker_check",
    "problem_dependent_bound",
    "rr_debias",
    "rr_keep_probability",
    "run_episode",
    "run_experiment",
    "run_sweeps",
    "threshold",
    "tv_l1",
    "verify_lemma3",
    "verify_lemma4",
]

BINARY = (0.0, 1.0)


def _encode(value):
    def fix(v):
        if isinstance(v, float) and math.isinf(v):
            return "inf" if v > 0 else "-inf"
        if isinstance(v, dict):
            return {k: fix(x) for k, x in v.items()}
        if isinstance(v, (list, tuple)):
            return [fix(x) for x in v]
        return v

    return json.dumps(fix(value))


def _decode(text):
    def fix(v):
        if v == "inf":
            return math.inf
        if v == "-inf":
            return -math.inf
        if isinstance(v, dict):
            return {k: fix(x) for k, x in v.items()}
        if isinstance(v, list):
            return [fix(x) for x in v]
        return v

    return fix(json.loads(text))


def expected_regret(env, pull_counts):
    return _core.expected_regret(_encode(env), list(pull_counts))


def run_episode(policy, env, horizon, seed=0):
    """Returns the history as a list of [action, reward(, privatized)]."""
    return _decode(_core.run_episode(_encode(policy), _encode(env), horizon, seed))


def history_probability(policy, env, history):
    """Returns (probability, support_violation)."""
    return _core.history_probability(_encode(policy), _encode(env), _encode(history))


def kl_history(policy, env1, env2, horizon):
    return _core.kl_history(_encode(policy), _encode(env1), _encode(env2), horizon)


def verify_lemma3(policy, env1, env2, horizon):
    return _decode(_core.verify_lemma3(_encode(policy), _encode(env1), _encode(env2), horizon))


def verify_lemma4(mechanism, policy, env1, env2, horizon):
    return _decode(
        _core.verify_lemma4(
            _encode(mechanism), _encode(policy), _encode(env1), _encode(env2), horizon
        )
    )


def minimax_bound(regime, num_arms, horizon, epsilon, c=0.0, constant="rate-only",
                  variant="appendix-derivation"):
    return _decode(_core.minimax_bound(regime, num_arms, horizon, epsilon, c, constant, variant))


def problem_dependent_bound(env, epsilon=None):
    """Local-privacy coefficient, or the non-private one when epsilon is None."""
    return _decode(_core.problem_dependent_bound(_encode(env), epsilon))


def hard_instance_pair(num_arms, horizon, epsilon, regime="local", c=0.0):
    return _decode(_core.hard_instance_pair(num_arms, horizon, epsilon, regime, c))


def audit_pan_dp(policy, num_arms, horizon, alphabet=BINARY):
    return _decode(_core.audit_pan_dp(_encode(policy), num_arms, horizon, list(alphabet)))


def audit_instantaneous_dp(policy, num_arms, horizon, alphabet=BINARY):
    return _decode(
        _core.audit_instantaneous_dp(_encode(policy), num_arms, horizon, list(alphabet))
    )


def audit_local_mechanism(mechanism, alphabet=BINARY):
    return _decode(_core.audit_local_mechanism(_encode(mechanism), list(alphabet)))


def audit_environment_privacy(policy, env1, env2, horizon, rho=None):
    return _decode(
        _core.audit_environment_privacy(
            _encode(policy), _encode(env1), _encode(env2), horizon, rho
        )
    )


def run_experiment(config):
    """Runs an experiment config; returns (csv_text, final max-over-env regret)."""
    return _core.run_experiment(_encode(config))


def run_sweeps():
    return _decode(_core.run_sweeps())
