"""
Mode arbiter: picks which of the three learners owns the decision tick.

Priority is Replenish > Danger > Explore. A learner whose mode is left gets a
terminal update with the reward earned since its last action, so every
learner sees contiguous episodes of its own mode only.
"""

import logging
from collections import Counter

from ..learning.sarsa import LearnerParams, SarsaLearner
from ..models.enums import Mode, Policy
from ..utils.rng import GameRNG
from .actions import (
    ACTION_NAMES,
    DEFAULT_AMMO_COSTS,
    ActionId,
    ItemMemory,
    legal_actions,
)
from .perception import STATE_COUNTS, Perception, encode_state

logger = logging.getLogger(__name__)


def select_mode(p: Perception, danger_priority: bool = False) -> Mode:
    """
    Replenish when ammo or health is at/below 40%, Danger when an enemy is seen
    or the bot is being hit, Explore otherwise.

    `danger_priority` swaps the first two rules for sensitivity experiments.
    """
    in_danger = p.see_enemy or p.being_hit
    if danger_priority and in_danger:
        return Mode.DANGER
    if p.needs_replenish:
        return Mode.REPLENISH
    if in_danger:
        return Mode.DANGER
    return Mode.EXPLORE


class DreBot:
    """Three independent Sarsa(lambda) learners behind the mode arbiter."""

    def __init__(
        self,
        params: LearnerParams,
        rng: GameRNG,
        policy: Policy = Policy.LEARNING,
        danger_priority: bool = False,
        ammo_costs: tuple[int, int] = DEFAULT_AMMO_COSTS,
    ):
        self.learners: dict[Mode, SarsaLearner] = {
            mode: SarsaLearner(STATE_COUNTS[mode], len(ACTION_NAMES[mode]), params, mode.value)
            for mode in Mode
        }
        self.rng = rng
        self.policy = policy
        self.danger_priority = danger_priority
        self.ammo_costs = ammo_costs
        self.memory = ItemMemory()
        # Mode of the decision awaiting its reward; None between lives.
        self.mode: Mode | None = None
        self._reward = 0.0
        self.mode_steps: Counter[Mode] = Counter()

    @property
    def learning(self) -> bool:
        return self.policy == Policy.LEARNING

    def arbiter_step(self, p: Perception) -> ActionId:
        self.memory.observe(p)
        mode = select_mode(p, self.danger_priority)
        s = encode_state(mode, p)
        legal = legal_actions(mode, p, self.memory, self.ammo_costs)

        if not self.learning:
            choices = sorted(legal)
            a = choices[self.rng.randrange(len(choices))]
        else:
            learner = self.learners[mode]
            a = learner.select_action(s, legal, self.rng)
            if self.mode is None:
                learner.begin(s, a)
            elif self.mode != mode:
                logger.debug(f"Mode switch {self.mode.value} -> {mode.value}")
                self.learners[self.mode].finalize_episode(self._reward)
                learner.begin(s, a)
            else:
                learner.observe(self._reward, s, a)

        self._reward = 0.0
        self.mode = mode
        self.mode_steps[mode] += 1
        return ActionId(mode, a, ACTION_NAMES[mode][a])

    def observe_reward(self, r: float) -> None:
        """Reward for the most recent action; consumed by the next arbiter_step."""
        self._reward += r

    def end_life(self, r: float) -> None:
        """The bot died: close the active learner's episode with the final reward."""
        if self.learning and self.mode is not None:
            self.learners[self.mode].finalize_episode(self._reward + r)
        self.mode = None
        self._reward = 0.0

    def q_tables_zero(self) -> bool:
        return all(learner.q.is_zero() for learner in self.learners.values())
