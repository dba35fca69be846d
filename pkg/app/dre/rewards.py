"""
Reward accumulator.

Each check that holds adds its constant to the tick's reward. Constants are
stored as integers scaled by 10**5 so totals are exact; `total` converts to a
float at the boundary.
"""

from typing import Protocol

from pydantic import BaseModel, ConfigDict, model_validator

REWARD_SCALE = 100_000

# Integer points per check (value * REWARD_SCALE), in reward-table order.
REWARD_POINTS: dict[str, int] = {
    "isHealthy": 10,
    "isNotHealthy": -10,
    "isNotColliding": 1,
    "isColliding": -1,
    "isMoving": 1,
    "isNotMoving": -1,
    "seeOpposingPlayer": 10,
    "isCausingDamage": 10_000,
    "isBeingDamaged": -10_000,
    "killedOpponent": 100_000,
    "killedByOpponent": -100_000,
    "pickedUpItem": 10_000,
    "gainedAdrenaline": 20_000,
}

EXCLUSIVE_PAIRS: tuple[tuple[str, str], ...] = (
    ("isHealthy", "isNotHealthy"),
    ("isColliding", "isNotColliding"),
    ("isMoving", "isNotMoving"),
)

# Strictly above the low-health threshold counts as healthy.
HEALTHY_ABOVE_PCT = 40.0


class TickEvents(Protocol):
    """What the arena reports for one entity after one tick."""

    health_pct: float
    collided: bool
    moved: bool
    saw_enemy: bool
    dealt_damage: bool
    took_damage: bool
    killed: bool
    died: bool
    picked_item: bool
    gained_adrenaline: bool


class RewardBreakdown(BaseModel):
    model_config = ConfigDict(frozen=True)

    isHealthy: bool = False
    isNotHealthy: bool = False
    isNotColliding: bool = False
    isColliding: bool = False
    isMoving: bool = False
    isNotMoving: bool = False
    seeOpposingPlayer: bool = False
    isCausingDamage: bool = False
    isBeingDamaged: bool = False
    killedOpponent: bool = False
    killedByOpponent: bool = False
    pickedUpItem: bool = False
    gainedAdrenaline: bool = False
    total_points: int = 0

    @model_validator(mode="after")
    def _check(self) -> "RewardBreakdown":
        for a, b in EXCLUSIVE_PAIRS:
            if getattr(self, a) == getattr(self, b):
                raise ValueError(f"exactly one of {a}/{b} must be set")
        expected = sum(points for name, points in REWARD_POINTS.items() if getattr(self, name))
        if self.total_points != expected:
            raise ValueError(f"total_points {self.total_points} != {expected}")
        return self

    @classmethod
    def from_flags(cls, **flags: bool) -> "RewardBreakdown":
        unknown = set(flags) - set(REWARD_POINTS)
        if unknown:
            raise ValueError(f"unknown reward checks: {sorted(unknown)}")
        points = sum(REWARD_POINTS[name] for name, on in flags.items() if on)
        return cls(total_points=points, **flags)

    @property
    def total(self) -> float:
        return self.total_points / REWARD_SCALE

    def active_checks(self) -> list[str]:
        return [name for name in REWARD_POINTS if getattr(self, name)]


def compute_reward(events: TickEvents) -> RewardBreakdown:
    healthy = events.health_pct > HEALTHY_ABOVE_PCT
    return RewardBreakdown.from_flags(
        isHealthy=healthy,
        isNotHealthy=not healthy,
        isNotColliding=not events.collided,
        isColliding=events.collided,
        isMoving=events.moved,
        isNotMoving=not events.moved,
        seeOpposingPlayer=events.saw_enemy,
        isCausingDamage=events.dealt_damage,
        isBeingDamaged=events.took_damage,
        killedOpponent=events.killed,
        killedByOpponent=events.died,
        pickedUpItem=events.picked_item,
        gainedAdrenaline=events.gained_adrenaline,
    )
