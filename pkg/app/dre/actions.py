"""
Per-mode action tables, the bot's item/opponent memory and the hard-coded
legality rules (no shooting without a visible opponent, no going to a pickup
that is not there, ...).
"""

from typing import NamedTuple

from ..models.enums import Mode, PickupKind
from .perception import Cell, Perception

DANGER_ACTIONS: tuple[str, ...] = (
    "ShootPrimary",
    "ShootSecondary",
    "LastSeenOpponent",
    "StopMovement",
    "Dodge",
    "Jump",
    "FacePlayerOrTurn",
    "ChangeWeapon",
)
REPLENISH_ACTIONS: tuple[str, ...] = (
    "ShootPrimary",
    "ShootSecondary",
    "Move",
    "GoToPickup",
    "RecordItem",
    "GoToKnownItem",
    "EscapeOpponent",
)
EXPLORE_ACTIONS: tuple[str, ...] = (
    "RunAround",
    "WalkAround",
    "TurnLeft",
    "TurnRight",
    "StopMovement",
    "Crouch",
)

ACTION_NAMES: dict[Mode, tuple[str, ...]] = {
    Mode.DANGER: DANGER_ACTIONS,
    Mode.REPLENISH: REPLENISH_ACTIONS,
    Mode.EXPLORE: EXPLORE_ACTIONS,
}

# Rounds consumed by ShootPrimary / ShootSecondary.
DEFAULT_AMMO_COSTS: tuple[int, int] = (1, 3)


class ActionId(NamedTuple):
    mode: Mode
    index: int
    name: str

    def __str__(self) -> str:
        return f"{self.mode.value}:{self.name}"


def action_id(mode: Mode, action: int | str) -> ActionId:
    """Look up an action by index or by its table name."""
    names = ACTION_NAMES[mode]
    if isinstance(action, str):
        return ActionId(mode, names.index(action), action)
    return ActionId(mode, action, names[action])


class ItemMemory:
    """
    Last-seen opponent location and recorded pickup locations.

    Lives as long as the bot (it survives deaths within a game).
    """

    def __init__(self):
        self.last_seen_opponent: Cell | None = None
        self.items: dict[Cell, PickupKind] = {}

    def observe(self, p: Perception) -> None:
        if p.see_enemy and p.opponent_cell is not None:
            self.last_seen_opponent = p.opponent_cell

    def forget_opponent(self) -> None:
        self.last_seen_opponent = None

    def record_item(self, cell: Cell, kind: PickupKind) -> None:
        self.items[cell] = kind

    @property
    def is_empty(self) -> bool:
        return not self.items


def legal_actions(
    mode: Mode,
    p: Perception,
    memory: ItemMemory,
    ammo_costs: tuple[int, int] = DEFAULT_AMMO_COSTS,
) -> frozenset[int]:
    names = ACTION_NAMES[mode]
    blocked: set[str] = set()

    if not p.see_enemy or p.ammo < ammo_costs[0]:
        blocked.add("ShootPrimary")
    if not p.see_enemy or p.ammo < ammo_costs[1]:
        blocked.add("ShootSecondary")
    if memory.last_seen_opponent is None:
        blocked.add("LastSeenOpponent")
    if not p.see_pickup:
        blocked.update(("GoToPickup", "RecordItem"))
    if memory.is_empty:
        blocked.add("GoToKnownItem")

    return frozenset(i for i, name in enumerate(names) if name not in blocked)
