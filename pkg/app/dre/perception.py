"""
Per-tick perception and the three state encoders.

Bit orders follow the row order of the state check tables:

    Danger     being_hit*16 + bumping*8 + hearing_noise*4 + distance   (32 states)
    Replenish  see_enemy*32 + see_pickup*16 + hear_pickup*8 + levels   (64 states)
    Explore    movement*2 + crouched                                   (6 states)
"""

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..models.enums import Distance, LevelsCode, Mode, Movement, PickupKind

Cell = tuple[int, int]

# Both thresholds are inclusive: <= 20% is critical, <= 40% is low.
LOW_LEVEL_PCT = 40.0
CRITICAL_LEVEL_PCT = 20.0

DISTANCE_ORDER: tuple[Distance, ...] = (Distance.SHORT, Distance.MEDIUM, Distance.FAR, Distance.NO)
MOVEMENT_ORDER: tuple[Movement, ...] = (Movement.WALK, Movement.RUN, Movement.STOP)
LEVELS_ORDER: tuple[LevelsCode, ...] = tuple(LevelsCode)

_DISTANCE_INDEX = {d: i for i, d in enumerate(DISTANCE_ORDER)}
_MOVEMENT_INDEX = {m: i for i, m in enumerate(MOVEMENT_ORDER)}
_LEVELS_INDEX = {c: i for i, c in enumerate(LEVELS_ORDER)}

# (ammo class, health class) -> joint code
_LEVELS_BY_CLASS: dict[tuple[str | None, str | None], LevelsCode] = {
    ("LA", None): LevelsCode.LA,
    (None, "LH"): LevelsCode.LH,
    ("LA", "LH"): LevelsCode.LA_LH,
    ("CA", None): LevelsCode.CA,
    (None, "CH"): LevelsCode.CH,
    ("CA", "CH"): LevelsCode.CA_CH,
    ("CA", "LH"): LevelsCode.CA_LH,
    ("LA", "CH"): LevelsCode.LA_CH,
}

STATE_COUNTS: dict[Mode, int] = {Mode.DANGER: 32, Mode.REPLENISH: 64, Mode.EXPLORE: 6}


class ModeError(Exception):
    """Raised when a perception cannot be encoded for the requested mode."""

    def __init__(self, message: str, error_code: str | None = None):
        super().__init__(message)
        self.error_code = error_code


class Perception(BaseModel):
    """One tick of decoded world checks for a single living entity."""

    model_config = ConfigDict(frozen=True)

    being_hit: bool = False
    bumping: bool = False
    hearing_noise: bool = False
    opponent_distance: Distance = Distance.NO
    see_enemy: bool = False
    see_pickup: bool = False
    hear_pickup: bool = False
    health_pct: float = Field(100.0, ge=0.0, le=100.0, allow_inf_nan=False)
    ammo_pct: float = Field(100.0, ge=0.0, le=100.0, allow_inf_nan=False)
    movement: Movement = Movement.STOP
    crouched: bool = False
    visible_opponent: int | None = None
    visible_pickup: int | None = None

    # Arena-side details used by actions and item memory.
    ammo: int = Field(100, ge=0, description="Rounds carried")
    position: Cell | None = None
    opponent_cell: Cell | None = None
    pickup_cell: Cell | None = None
    pickup_kind: PickupKind | None = None

    @model_validator(mode="after")
    def _consistent(self) -> "Perception":
        if (self.opponent_distance == Distance.NO) == self.see_enemy:
            raise ValueError("opponent_distance must be 'no' exactly when no enemy is seen")
        if self.visible_opponent is not None and not self.see_enemy:
            raise ValueError("visible_opponent set without see_enemy")
        if self.visible_pickup is not None and not self.see_pickup:
            raise ValueError("visible_pickup set without see_pickup")
        return self

    @property
    def needs_replenish(self) -> bool:
        return self.ammo_pct <= LOW_LEVEL_PCT or self.health_pct <= LOW_LEVEL_PCT


def _level_class(pct: float, low: str, critical: str) -> str | None:
    if pct <= CRITICAL_LEVEL_PCT:
        return critical
    if pct <= LOW_LEVEL_PCT:
        return low
    return None


def derive_levels(ammo_pct: float, health_pct: float) -> LevelsCode:
    ammo_cls = _level_class(ammo_pct, "LA", "CA")
    health_cls = _level_class(health_pct, "LH", "CH")
    if ammo_cls is None and health_cls is None:
        raise ModeError("no replenish level", error_code="dre.no_replenish_level")
    return _LEVELS_BY_CLASS[(ammo_cls, health_cls)]


def encode_danger(p: Perception) -> int:
    return (
        int(p.being_hit) * 16
        + int(p.bumping) * 8
        + int(p.hearing_noise) * 4
        + _DISTANCE_INDEX[p.opponent_distance]
    )


def encode_replenish(p: Perception) -> int:
    levels = derive_levels(p.ammo_pct, p.health_pct)
    return (
        int(p.see_enemy) * 32
        + int(p.see_pickup) * 16
        + int(p.hear_pickup) * 8
        + _LEVELS_INDEX[levels]
    )


def encode_explore(p: Perception) -> int:
    return _MOVEMENT_INDEX[p.movement] * 2 + int(p.crouched)


def encode_state(mode: Mode, p: Perception) -> int:
    if mode == Mode.DANGER:
        return encode_danger(p)
    if mode == Mode.REPLENISH:
        return encode_replenish(p)
    return encode_explore(p)


def _flag(name: str, value: bool) -> str:
    return f"{name}={'T' if value else 'F'}"


def _danger_state_names() -> tuple[str, ...]:
    names = []
    for s in range(STATE_COUNTS[Mode.DANGER]):
        names.append(
            "|".join(
                (
                    _flag("BeingHit", bool(s & 16)),
                    _flag("Bumping", bool(s & 8)),
                    _flag("HearingNoise", bool(s & 4)),
                    f"Distance={DISTANCE_ORDER[s & 3].value}",
                )
            )
        )
    return tuple(names)


def _replenish_state_names() -> tuple[str, ...]:
    names = []
    for s in range(STATE_COUNTS[Mode.REPLENISH]):
        names.append(
            "|".join(
                (
                    _flag("SeeEnemy", bool(s & 32)),
                    _flag("SeePickup", bool(s & 16)),
                    _flag("HearPickup", bool(s & 8)),
                    f"Levels={LEVELS_ORDER[s & 7].value}",
                )
            )
        )
    return tuple(names)


def _explore_state_names() -> tuple[str, ...]:
    return tuple(
        f"Movement={MOVEMENT_ORDER[s // 2].value}|{_flag('Crouched', bool(s % 2))}"
        for s in range(STATE_COUNTS[Mode.EXPLORE])
    )


STATE_NAMES: dict[Mode, tuple[str, ...]] = {
    Mode.DANGER: _danger_state_names(),
    Mode.REPLENISH: _replenish_state_names(),
    Mode.EXPLORE: _explore_state_names(),
}
