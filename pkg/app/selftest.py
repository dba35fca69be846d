"""
Embedded invariant suite behind `dre-bot selftest`.

Each check returns a short detail string on success and raises
AssertionError (or any other exception) on failure.
"""

import itertools
import logging
import time
from collections.abc import Callable
from decimal import Decimal
from typing import NamedTuple

import numpy as np

from .dre.actions import ACTION_NAMES
from .dre.perception import STATE_COUNTS, Perception, encode_state
from .dre.rewards import EXCLUSIVE_PAIRS, REWARD_SCALE, RewardBreakdown
from .harness.game import run_game
from .learning.gridworld import GridWorld, policy_matches_oracle, train_gridworld
from .learning.sarsa import LearnerParams, SarsaLearner, StepRecord
from .models.enums import Distance, LevelsCode, Mode, Movement
from .models.request import PARAMETER_GRID, ExperimentConfig
from .utils.rng import GameRNG

logger = logging.getLogger(__name__)

# Reward table in decimal form, kept apart from the integer table under test.
REFERENCE_REWARDS: dict[str, Decimal] = {
    "isHealthy": Decimal("0.0001"),
    "isNotHealthy": Decimal("-0.0001"),
    "isNotColliding": Decimal("0.00001"),
    "isColliding": Decimal("-0.00001"),
    "isMoving": Decimal("0.00001"),
    "isNotMoving": Decimal("-0.00001"),
    "seeOpposingPlayer": Decimal("0.0001"),
    "isCausingDamage": Decimal("0.1"),
    "isBeingDamaged": Decimal("-0.1"),
    "killedOpponent": Decimal("1.0"),
    "killedByOpponent": Decimal("-1.0"),
    "pickedUpItem": Decimal("0.1"),
    "gainedAdrenaline": Decimal("0.2"),
}

# (ammo %, health %) landing in each joint level
LEVEL_SAMPLES: dict[LevelsCode, tuple[float, float]] = {
    LevelsCode.LA: (30.0, 100.0),
    LevelsCode.LH: (100.0, 30.0),
    LevelsCode.LA_LH: (30.0, 30.0),
    LevelsCode.CA: (10.0, 100.0),
    LevelsCode.CH: (100.0, 10.0),
    LevelsCode.CA_CH: (10.0, 10.0),
    LevelsCode.CA_LH: (10.0, 30.0),
    LevelsCode.LA_CH: (30.0, 10.0),
}


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str
    seconds: float


def all_perceptions(mode: Mode) -> list[Perception]:
    """One perception per distinct combination of the checks the mode encodes."""
    out = []
    if mode == Mode.DANGER:
        for hit, bump, noise, dist in itertools.product(
            (False, True), (False, True), (False, True), list(Distance)
        ):
            out.append(
                Perception(
                    being_hit=hit,
                    bumping=bump,
                    hearing_noise=noise,
                    opponent_distance=dist,
                    see_enemy=dist != Distance.NO,
                )
            )
    elif mode == Mode.REPLENISH:
        for enemy, see_item, hear_item, levels in itertools.product(
            (False, True), (False, True), (False, True), list(LevelsCode)
        ):
            ammo, health = LEVEL_SAMPLES[levels]
            out.append(
                Perception(
                    see_enemy=enemy,
                    opponent_distance=Distance.MEDIUM if enemy else Distance.NO,
                    see_pickup=see_item,
                    hear_pickup=hear_item,
                    ammo_pct=ammo,
                    health_pct=health,
                )
            )
    else:
        for movement, crouched in itertools.product(list(Movement), (False, True)):
            out.append(Perception(movement=movement, crouched=crouched))
    return out


def check_encoder_bijections() -> str:
    for mode in Mode:
        states = [encode_state(mode, p) for p in all_perceptions(mode)]
        n = STATE_COUNTS[mode]
        assert sorted(states) == list(range(n)), f"{mode.value} encoder is not a bijection onto 0..{n - 1}"
    return "32 Danger / 64 Replenish / 6 Explore states"


def check_action_counts() -> str:
    sizes = {mode: len(ACTION_NAMES[mode]) for mode in Mode}
    assert sizes == {Mode.DANGER: 8, Mode.REPLENISH: 7, Mode.EXPLORE: 6}, f"action sets {sizes}"
    return "8 / 7 / 6 actions"


def reward_flag_vectors() -> list[dict[str, bool]]:
    """Every flag assignment that sets exactly one check of each exclusive pair."""
    paired = {name for pair in EXCLUSIVE_PAIRS for name in pair}
    free = [name for name in REFERENCE_REWARDS if name not in paired]
    vectors = []
    for pair_bits in itertools.product((0, 1), repeat=len(EXCLUSIVE_PAIRS)):
        for free_bits in itertools.product((False, True), repeat=len(free)):
            flags = dict(zip(free, free_bits, strict=True))
            for (first, second), bit in zip(EXCLUSIVE_PAIRS, pair_bits, strict=True):
                flags[first] = bit == 0
                flags[second] = bit == 1
            vectors.append(flags)
    return vectors


def check_reward_exactness() -> str:
    vectors = reward_flag_vectors()
    for flags in vectors:
        expected = sum((REFERENCE_REWARDS[k] for k, on in flags.items() if on), Decimal(0))
        got = RewardBreakdown.from_flags(**flags)
        assert Decimal(got.total_points) / REWARD_SCALE == expected, (
            f"reward mismatch for {sorted(k for k, on in flags.items() if on)}: "
            f"{got.total_points}/{REWARD_SCALE} != {expected}"
        )
    return f"{len(vectors)} flag vectors exact"


def check_lambda_zero_equivalence(transitions: int = 10_000, seed: int = 11) -> str:
    n_states, n_actions = 12, 4
    params = LearnerParams(alpha=0.2, gamma=0.9, lam=0.0, epsilon=0.0)
    learner = SarsaLearner(n_states, n_actions, params)
    reference = np.zeros((n_states, n_actions), dtype=np.float64)
    rng = GameRNG(seed)
    for _ in range(transitions):
        s, a = rng.randrange(n_states), rng.randrange(n_actions)
        s2, a2 = rng.randrange(n_states), rng.randrange(n_actions)
        r = rng.random() * 2.0 - 1.0
        learner.update(StepRecord(s, a, r, s2, a2))
        delta = r + params.gamma * reference[s2, a2] - reference[s, a]
        reference[s, a] += params.alpha * delta
    assert learner.q.values.tobytes() == reference.tobytes(), "Sarsa(0) and one-step Sarsa differ"
    return f"{transitions} transitions bit-identical"


def check_trace_decay(max_steps: int = 100) -> str:
    for gamma, lam in itertools.product(PARAMETER_GRID, PARAMETER_GRID):
        learner = SarsaLearner(2, 2, LearnerParams(alpha=0.1, gamma=gamma, lam=lam))
        learner.update(StepRecord(0, 0, 0.0, 1, 1))
        decay = gamma * lam
        for k in range(1, max_steps + 1):
            expected = decay**k
            got = learner.e.values[0, 0]
            assert abs(got - expected) <= 1e-12, f"e after {k} updates is {got}, expected {expected}"
            learner.update(StepRecord(1, 1, 0.0, 1, 1))
    return f"(gamma*lambda)^k for k <= {max_steps} over the 4x4 grid"


def check_gridworld_oracle() -> str:
    world = GridWorld()
    learner = train_gridworld(world)
    fraction = policy_matches_oracle(learner, world)
    assert fraction == 1.0, f"greedy policy optimal in {fraction:.0%} of states"
    return "greedy policy matches value iteration in every non-goal state"


def check_replay_determinism() -> str:
    cfg = ExperimentConfig(deaths_per_game=2, max_ticks=20_000, base_seed=5)
    first = run_game(cfg, 0.9, 0.3, seed=5).record
    second = run_game(cfg, 0.9, 0.3, seed=5).record
    assert first.completed, first.error
    assert first == second, "identical seeds produced different records"
    return f"event digest {first.events_digest[:12]} reproduced"


CHECKS: list[tuple[str, Callable[[], str]]] = [
    ("encoder bijections", check_encoder_bijections),
    ("action set sizes", check_action_counts),
    ("reward exactness", check_reward_exactness),
    ("lambda=0 equivalence", check_lambda_zero_equivalence),
    ("trace decay", check_trace_decay),
    ("gridworld oracle", check_gridworld_oracle),
    ("replay determinism", check_replay_determinism),
]


def run_selftest() -> list[CheckResult]:
    results = []
    for name, check in CHECKS:
        start = time.perf_counter()
        try:
            detail = check()
            passed = True
        except Exception as e:
            detail = f"{type(e).__name__}: {e}"
            passed = False
            logger.debug(f"Self-test {name} failed", exc_info=True)
        results.append(CheckResult(name, passed, detail, time.perf_counter() - start))
    return results
