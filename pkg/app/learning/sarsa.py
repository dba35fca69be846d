"""
Tabular Sarsa(lambda) with replacing eligibility traces.

The learner is domain independent: states and actions are plain integer
indices into dense tables. Per step it computes

    delta   = r + gamma * Q(s', a') - Q(s, a)
    e(s, a) = 1
    Q      += alpha * delta * e      (all cells)
    e      *= gamma * lambda         (all cells)

and selects actions epsilon-greedily over a caller-supplied legal set, ties
going to the lowest action index.
"""

import hashlib
import logging
import math
from collections.abc import Iterable
from typing import NamedTuple, Protocol

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger(__name__)


class LearnerError(Exception):
    """Raised on invalid learner input (bad indices, rewards, legal sets)."""

    def __init__(self, message: str, error_code: str | None = None):
        super().__init__(message)
        self.error_code = error_code


class RandomStream(Protocol):
    def random(self) -> float: ...

    def randrange(self, n: int) -> int: ...


class LearnerParams(BaseModel):
    """Step size, discount, trace decay and exploration rate."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    alpha: float = Field(0.2, gt=0.0, le=1.0, allow_inf_nan=False, description="Learning rate")
    gamma: float = Field(0.9, ge=0.0, le=1.0, allow_inf_nan=False, description="Discount")
    lam: float = Field(
        0.0, ge=0.0, le=1.0, allow_inf_nan=False, alias="lambda", description="Trace decay"
    )
    epsilon: float = Field(
        0.2, ge=0.0, le=1.0, allow_inf_nan=False, description="Exploration probability"
    )


class StepRecord(NamedTuple):
    s: int
    a: int
    r: float
    s_next: int
    a_next: int


class QTable:
    """Dense (n_states x n_actions) table of action values, zero-initialised."""

    def __init__(self, n_states: int, n_actions: int):
        if n_states <= 0 or n_actions <= 0:
            raise LearnerError(
                f"table dimensions must be positive, got {n_states}x{n_actions}",
                error_code="learner.bad_shape",
            )
        self.n_states = n_states
        self.n_actions = n_actions
        self.values = np.zeros((n_states, n_actions), dtype=np.float64)

    @classmethod
    def from_array(cls, values: np.ndarray) -> "QTable":
        arr = np.asarray(values, dtype=np.float64)
        if arr.ndim != 2:
            raise LearnerError("Q-table must be two-dimensional", error_code="learner.bad_shape")
        table = cls(arr.shape[0], arr.shape[1])
        table.values[:] = arr
        return table

    def is_zero(self) -> bool:
        return not np.any(self.values)

    def checksum(self) -> str:
        return hashlib.sha256(self.values.tobytes()).hexdigest()


class TraceTable(QTable):
    """Eligibility values e(s, a) in [0, 1], same shape as the Q-table."""

    def reset(self) -> None:
        self.values.fill(0.0)


class SarsaLearner:
    """One Q-table, one trace table and the pending (s, a) of the open episode."""

    def __init__(
        self,
        n_states: int,
        n_actions: int,
        params: LearnerParams | None = None,
        name: str = "",
    ):
        self.params = params or LearnerParams()
        self.q = QTable(n_states, n_actions)
        self.e = TraceTable(n_states, n_actions)
        self.pending: tuple[int, int] | None = None
        self.name = name
        self.updates = 0

    @property
    def n_states(self) -> int:
        return self.q.n_states

    @property
    def n_actions(self) -> int:
        return self.q.n_actions

    def set_epsilon(self, epsilon: float) -> None:
        """Replace the exploration rate (validated like any other parameter)."""
        self.params = LearnerParams(
            alpha=self.params.alpha,
            gamma=self.params.gamma,
            lam=self.params.lam,
            epsilon=epsilon,
        )

    # ------------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------------

    def _check_state(self, s: int) -> None:
        if not 0 <= s < self.q.n_states:
            raise LearnerError(
                f"bad state index {s} (n_states={self.q.n_states})",
                error_code="learner.bad_state",
            )

    def _check_action(self, a: int) -> None:
        if not 0 <= a < self.q.n_actions:
            raise LearnerError(
                f"bad action index {a} (n_actions={self.q.n_actions})",
                error_code="learner.bad_action",
            )

    @staticmethod
    def _check_reward(r: float) -> None:
        if not math.isfinite(r):
            raise LearnerError(f"bad reward {r!r}", error_code="learner.bad_reward")

    # ------------------------------------------------------------------
    # Policy
    # ------------------------------------------------------------------

    def select_action(self, s: int, legal: Iterable[int], rng: RandomStream) -> int:
        """
        Epsilon-greedy choice over `legal`.

        Exactly one uniform draw is consumed per call, plus one more when the
        exploratory branch is taken.
        """
        self._check_state(s)
        actions = sorted(set(legal))
        if not actions:
            raise LearnerError("no legal action", error_code="learner.no_legal_action")
        for a in actions:
            self._check_action(a)

        if rng.random() < self.params.epsilon:
            return actions[rng.randrange(len(actions))]

        row = self.q.values[s]
        best = actions[0]
        best_q = row[best]
        for a in actions[1:]:
            if row[a] > best_q:
                best, best_q = a, row[a]
        return best

    def greedy_policy(self) -> dict[int, int]:
        """Lowest-index argmax per state over all actions (legality ignored)."""
        return {s: int(a) for s, a in enumerate(np.argmax(self.q.values, axis=1))}

    # ------------------------------------------------------------------
    # Learning
    # ------------------------------------------------------------------

    def update(self, step: StepRecord) -> None:
        self._check_state(step.s)
        self._check_state(step.s_next)
        self._check_action(step.a)
        self._check_action(step.a_next)
        self._check_reward(step.r)

        q = self.q.values
        e = self.e.values
        p = self.params
        delta = step.r + p.gamma * q[step.s_next, step.a_next] - q[step.s, step.a]
        e[step.s, step.a] = 1.0
        q += (p.alpha * delta) * e
        e *= p.gamma * p.lam
        self.updates += 1

    def begin(self, s: int, a: int) -> None:
        """Open an episode at (s, a) without learning anything yet."""
        self._check_state(s)
        self._check_action(a)
        self.pending = (s, a)

    def observe(self, r: float, s_next: int, a_next: int) -> None:
        """Learn from the pending pair, then make (s_next, a_next) pending."""
        if self.pending is None:
            self.begin(s_next, a_next)
            return
        s, a = self.pending
        self.update(StepRecord(s, a, r, s_next, a_next))
        self.pending = (s_next, a_next)

    def finalize_episode(self, r: float) -> None:
        """Terminal update (Q(s', a') taken as 0), then clear traces. No-op when idle."""
        if self.pending is None:
            return
        self._check_reward(r)
        s, a = self.pending
        q = self.q.values
        e = self.e.values
        delta = r - q[s, a]
        e[s, a] = 1.0
        q += (self.params.alpha * delta) * e
        self.e.reset()
        self.pending = None
        self.updates += 1

    def abandon_episode(self) -> None:
        """Drop the open episode without a terminal update."""
        self.e.reset()
        self.pending = None
