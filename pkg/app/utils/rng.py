"""
Seeded random streams for deterministic simulation.

All randomness in a game goes through GameRNG instances. Each consumer
(combat rolls, the bot's exploration, each scripted opponent) owns a forked
stream so that drawing numbers in one system never perturbs another.
"""

import random
from collections.abc import Sequence
from typing import TypeVar

from .helpers import stable_hash

T = TypeVar("T")


def derive_seed(base_seed: int, *parts: object) -> int:
    """Stable child seed for (base_seed, *parts); independent of call order."""
    return stable_hash(int(base_seed), *parts)


class GameRNG:
    """Deterministic Mersenne Twister stream that can be forked by name."""

    def __init__(self, seed: int):
        self._seed = int(seed)
        self._rng = random.Random(self._seed)

    @property
    def seed(self) -> int:
        return self._seed

    def random(self) -> float:
        """Float in [0.0, 1.0)."""
        return self._rng.random()

    def randrange(self, n: int) -> int:
        """Integer in [0, n)."""
        return self._rng.randrange(n)

    def randint(self, low: int, high: int) -> int:
        """Integer in [low, high], inclusive."""
        return self._rng.randint(low, high)

    def choice(self, seq: Sequence[T]) -> T:
        return self._rng.choice(seq)

    def fork(self, name: str) -> "GameRNG":
        """Child stream whose seed depends only on this seed and `name`."""
        return GameRNG(derive_seed(self._seed, name))
