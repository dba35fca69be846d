"""Tests for the tabular Sarsa(lambda) learner."""

import itertools
from collections import Counter

import numpy as np
import pytest
from pydantic import ValidationError

from app.dre.rewards import RewardBreakdown
from app.learning.sarsa import (
    LearnerError,
    LearnerParams,
    QTable,
    SarsaLearner,
    StepRecord,
)
from app.models.request import PARAMETER_GRID
from app.selftest import reward_flag_vectors
from app.utils.rng import GameRNG


class FixedStream:
    """Random stream returning scripted values."""

    def __init__(self, uniform: float, index: int = 0):
        self.uniform = uniform
        self.index = index
        self.draws = 0

    def random(self) -> float:
        self.draws += 1
        return self.uniform

    def randrange(self, n: int) -> int:
        return min(self.index, n - 1)


# ── LearnerParams ────────────────────────────────────────────────────
class TestLearnerParams:
    def test_defaults(self):
        p = LearnerParams()
        assert (p.alpha, p.gamma, p.lam, p.epsilon) == (0.2, 0.9, 0.0, 0.2)

    def test_lambda_alias(self):
        assert LearnerParams(**{"lambda": 0.3}).lam == 0.3

    @pytest.mark.parametrize(
        "kwargs",
        [{"alpha": 0.0}, {"alpha": 1.5}, {"gamma": -0.1}, {"epsilon": 2.0}, {"gamma": float("nan")}],
    )
    def test_out_of_range_rejected(self, kwargs):
        with pytest.raises(ValidationError):
            LearnerParams(**kwargs)


# ── Action selection ─────────────────────────────────────────────────
class TestSelectAction:
    def test_empty_legal_set(self):
        learner = SarsaLearner(4, 3)
        with pytest.raises(LearnerError, match="no legal action") as exc:
            learner.select_action(0, [], FixedStream(0.9))
        assert exc.value.error_code == "learner.no_legal_action"

    def test_bad_state(self):
        learner = SarsaLearner(4, 3)
        with pytest.raises(LearnerError, match="bad state index"):
            learner.select_action(4, [0], FixedStream(0.9))

    def test_bad_action_in_legal_set(self):
        learner = SarsaLearner(4, 3)
        with pytest.raises(LearnerError) as exc:
            learner.select_action(0, [0, 3], FixedStream(0.9))
        assert exc.value.error_code == "learner.bad_action"

    def test_greedy_ties_go_to_lowest_index(self):
        learner = SarsaLearner(2, 4, LearnerParams(epsilon=0.0))
        assert learner.select_action(0, {3, 1, 2}, FixedStream(0.5)) == 1

    def test_greedy_picks_max_among_legal(self):
        learner = SarsaLearner(1, 4, LearnerParams(epsilon=0.0))
        learner.q.values[0] = [9.0, 5.0, 5.0, 1.0]
        assert learner.select_action(0, [1, 2, 3], FixedStream(0.5)) == 1

    def test_explores_below_epsilon(self):
        learner = SarsaLearner(1, 4, LearnerParams(epsilon=0.2))
        learner.q.values[0] = [9.0, 0.0, 0.0, 0.0]
        assert learner.select_action(0, [0, 2, 3], FixedStream(0.1, index=2)) == 3

    def test_epsilon_zero_never_explores(self):
        learner = SarsaLearner(1, 3, LearnerParams(epsilon=0.0))
        learner.q.values[0] = [0.0, 1.0, 0.0]
        assert learner.select_action(0, [0, 1, 2], FixedStream(0.0, index=0)) == 1

    def test_one_draw_when_greedy(self):
        stream = FixedStream(0.99)
        SarsaLearner(1, 3).select_action(0, [0, 1, 2], stream)
        assert stream.draws == 1

    def test_random_choices_stay_legal(self):
        learner = SarsaLearner(1, 8, LearnerParams(epsilon=1.0))
        rng = GameRNG(3)
        picks = {learner.select_action(0, [1, 4, 6], rng) for _ in range(300)}
        assert picks == {1, 4, 6}

    def test_full_exploration_is_uniform(self):
        learner = SarsaLearner(1, 8, LearnerParams(epsilon=1.0))
        learner.q.values[0, 3] = 5.0
        rng = GameRNG(17)
        counts = Counter(learner.select_action(0, range(8), rng) for _ in range(10_000))
        assert sorted(counts) == list(range(8))
        for a in range(8):
            assert 0.10 <= counts[a] / 10_000 <= 0.15


# ── Updates ──────────────────────────────────────────────────────────
class TestUpdate:
    def test_first_update_from_zero(self):
        learner = SarsaLearner(3, 2, LearnerParams(alpha=0.2))
        learner.update(StepRecord(0, 1, 1.0, 2, 0))
        assert learner.q.values[0, 1] == pytest.approx(0.2)
        assert np.count_nonzero(learner.q.values) == 1

    def test_trace_spreads_td_error(self):
        learner = SarsaLearner(3, 1, LearnerParams(alpha=0.5, gamma=0.9, lam=0.5))
        learner.update(StepRecord(0, 0, 1.0, 1, 0))
        assert learner.q.values[0, 0] == pytest.approx(0.5)
        assert learner.e.values[0, 0] == pytest.approx(0.45)

        learner.update(StepRecord(1, 0, 2.0, 2, 0))
        assert learner.q.values[1, 0] == pytest.approx(1.0)
        assert learner.q.values[0, 0] == pytest.approx(0.5 + 0.5 * 2.0 * 0.45)

    def test_replacing_trace_caps_at_one(self):
        learner = SarsaLearner(2, 1, LearnerParams(gamma=1.0, lam=1.0))
        for _ in range(5):
            learner.update(StepRecord(0, 0, 0.0, 0, 0))
        assert learner.e.values[0, 0] == 1.0

    def test_bad_reward(self):
        learner = SarsaLearner(2, 2)
        with pytest.raises(LearnerError, match="bad reward"):
            learner.update(StepRecord(0, 0, float("inf"), 1, 1))

    def test_bad_next_state(self):
        learner = SarsaLearner(2, 2)
        with pytest.raises(LearnerError, match="bad state index"):
            learner.update(StepRecord(0, 0, 0.0, 5, 1))

    @pytest.mark.parametrize(("gamma", "lam"), list(itertools.product(PARAMETER_GRID, PARAMETER_GRID)))
    def test_trace_decay_power_law(self, gamma, lam):
        learner = SarsaLearner(2, 2, LearnerParams(gamma=gamma, lam=lam))
        learner.update(StepRecord(0, 0, 0.0, 1, 1))
        for n in range(1, 101):
            assert abs(learner.e.values[0, 0] - (gamma * lam) ** n) <= 1e-12
            learner.update(StepRecord(1, 1, 0.0, 1, 1))

    def test_lambda_zero_matches_one_step_sarsa(self):
        params = LearnerParams(alpha=0.3, gamma=0.8, lam=0.0)
        learner = SarsaLearner(6, 3, params)
        reference = np.zeros((6, 3))
        rng = GameRNG(21)
        for _ in range(2000):
            s, a, s2, a2 = rng.randrange(6), rng.randrange(3), rng.randrange(6), rng.randrange(3)
            r = rng.random() - 0.5
            learner.update(StepRecord(s, a, r, s2, a2))
            delta = r + params.gamma * reference[s2, a2] - reference[s, a]
            reference[s, a] += params.alpha * delta
        assert learner.q.values.tobytes() == reference.tobytes()

    def test_values_stay_bounded(self):
        learner = SarsaLearner(5, 2, LearnerParams(alpha=0.5, gamma=0.9, lam=0.0))
        rng = GameRNG(8)
        for _ in range(20_000):
            learner.update(
                StepRecord(rng.randrange(5), rng.randrange(2), rng.random() * 2 - 1, rng.randrange(5), rng.randrange(2))
            )
        assert np.all(np.abs(learner.q.values) <= 1.0 / (1.0 - 0.9) + 1e-9)

    def test_million_trace_updates_stay_finite(self):
        table = [RewardBreakdown.from_flags(**flags).total for flags in reward_flag_vectors()]
        low, high = min(-1.6, *table), max(1.4001, *table)
        learner = SarsaLearner(32, 8, LearnerParams(alpha=0.1, gamma=0.9, lam=0.9))
        rng = GameRNG(30)
        for _ in range(1_000_000):
            learner.update(
                StepRecord(
                    rng.randrange(32),
                    rng.randrange(8),
                    low + rng.random() * (high - low),
                    rng.randrange(32),
                    rng.randrange(8),
                )
            )
        assert learner.updates == 1_000_000
        assert np.all(np.isfinite(learner.q.values))


# ── Episodes ─────────────────────────────────────────────────────────
class TestEpisodes:
    def test_observe_without_pending_begins(self):
        learner = SarsaLearner(3, 2)
        learner.observe(5.0, 1, 1)
        assert learner.pending == (1, 1)
        assert learner.q.is_zero()

    def test_observe_learns_from_pending(self):
        learner = SarsaLearner(3, 2, LearnerParams(alpha=0.2))
        learner.begin(0, 0)
        learner.observe(1.0, 1, 1)
        assert learner.q.values[0, 0] == pytest.approx(0.2)
        assert learner.pending == (1, 1)

    def test_finalize_treats_next_value_as_zero(self):
        learner = SarsaLearner(3, 2, LearnerParams(alpha=0.2, gamma=0.9))
        learner.q.values[0, 1] = 0.5
        learner.begin(0, 1)
        learner.finalize_episode(1.0)
        assert learner.q.values[0, 1] == pytest.approx(0.5 + 0.2 * (1.0 - 0.5))
        assert learner.pending is None
        assert not np.any(learner.e.values)

    def test_finalize_when_idle_is_noop(self):
        learner = SarsaLearner(3, 2)
        learner.finalize_episode(-1.0)
        assert learner.q.is_zero()
        assert learner.updates == 0

    def test_abandon_clears_without_learning(self):
        learner = SarsaLearner(3, 2)
        learner.begin(1, 1)
        learner.abandon_episode()
        assert learner.pending is None
        assert learner.q.is_zero()

    def test_greedy_policy_lowest_index(self):
        learner = SarsaLearner(2, 3)
        learner.q.values[1] = [0.0, 2.0, 2.0]
        assert learner.greedy_policy() == {0: 0, 1: 1}

    def test_set_epsilon_validates(self):
        learner = SarsaLearner(1, 1)
        learner.set_epsilon(0.05)
        assert learner.params.epsilon == 0.05
        with pytest.raises(ValidationError):
            learner.set_epsilon(1.5)


# ── QTable ───────────────────────────────────────────────────────────
class TestQTable:
    def test_bad_shape(self):
        with pytest.raises(LearnerError):
            QTable(0, 3)
        with pytest.raises(LearnerError):
            QTable.from_array(np.zeros(4))

    def test_checksum_tracks_contents(self):
        a, b = QTable(2, 2), QTable(2, 2)
        assert a.checksum() == b.checksum()
        b.values[1, 1] = 0.1
        assert a.checksum() != b.checksum()
