"""
Arena configuration: numeric rules of the micro-arena plus its ASCII layout.

Layout legend: `#` wall, `.` floor, `H`/`A`/`D` health/ammo/adrenaline pickup
spawns, `S` player spawn points. Every numeric rule is a config key so that a
flat `key = value` file can override it.
"""

import logging
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..config import ConfigError, load_key_value_file
from ..models.enums import Distance, FireMode, PickupKind

logger = logging.getLogger(__name__)

Cell = tuple[int, int]

# Small map with spawn points kept within medium range of each other.
DEFAULT_LAYOUT = """\
####################
#........D.........#
#..................#
#..##..........##..#
#..##..........##..#
#....S........S....#
#..................#
#.A......##......H.#
#........##........#
#.....#......#.....#
#.....#..S...#.....#
#........##........#
#.H......##......A.#
#..................#
#....S........S....#
#..##..........##..#
#..##..........##..#
#..................#
#.........D........#
####################
"""

_PICKUP_GLYPHS = {"H": PickupKind.HEALTH, "A": PickupKind.AMMO, "D": PickupKind.ADRENALINE}
_FLOOR_GLYPHS = frozenset({".", "S", *_PICKUP_GLYPHS})


class Layout:
    """Parsed map: dimensions, wall cells and spawn points in reading order."""

    def __init__(
        self,
        width: int,
        height: int,
        walls: frozenset[Cell],
        player_spawns: list[Cell],
        pickup_spawns: list[tuple[Cell, PickupKind]],
    ):
        self.width = width
        self.height = height
        self.walls = walls
        self.player_spawns = player_spawns
        self.pickup_spawns = pickup_spawns

    def is_floor(self, cell: Cell) -> bool:
        x, y = cell
        return 0 <= x < self.width and 0 <= y < self.height and cell not in self.walls

    def floor_cells(self) -> list[Cell]:
        return [
            (x, y)
            for y in range(self.height)
            for x in range(self.width)
            if (x, y) not in self.walls
        ]


def parse_layout(text: str) -> Layout:
    rows = [line.rstrip("\r") for line in text.strip("\n").splitlines()]
    if not rows:
        raise ConfigError("empty arena layout", error_code="arena.bad_layout")
    width = len(rows[0])
    walls: set[Cell] = set()
    player_spawns: list[Cell] = []
    pickup_spawns: list[tuple[Cell, PickupKind]] = []

    for y, row in enumerate(rows):
        if len(row) != width:
            raise ConfigError(
                f"layout row {y} has width {len(row)}, expected {width}",
                error_code="arena.bad_layout",
            )
        for x, glyph in enumerate(row):
            if glyph == "#":
                walls.add((x, y))
            elif glyph not in _FLOOR_GLYPHS:
                raise ConfigError(
                    f"unknown layout glyph {glyph!r} at ({x}, {y})",
                    error_code="arena.bad_layout",
                )
            elif glyph == "S":
                player_spawns.append((x, y))
            elif glyph in _PICKUP_GLYPHS:
                pickup_spawns.append(((x, y), _PICKUP_GLYPHS[glyph]))

    if not player_spawns:
        raise ConfigError("layout has no player spawn points", error_code="arena.bad_layout")
    return Layout(width, len(rows), frozenset(walls), player_spawns, pickup_spawns)


class ArenaConfig(BaseModel):
    """Rules of the arena. Defaults give a small map with near-constant combat."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    layout: str = Field(DEFAULT_LAYOUT, description="ASCII map")
    layout_path: str | None = Field(None, description="Read the ASCII map from this file")

    max_health: int = Field(100, gt=0)
    max_ammo: int = Field(100, gt=0)
    respawn_delay: int = Field(5, ge=0, description="Ticks between death and respawn")
    pickup_respawn: int = Field(15, ge=1, description="Ticks before a taken pickup returns")
    tick_limit: int | None = Field(None, gt=0, description="Optional hard stop for a game")

    short_range: float = Field(5.0, gt=0, description="Distance <= short_range is short")
    medium_range: float = Field(15.0, gt=0, description="Distance <= medium_range is medium")
    hearing_radius: float = Field(8.0, ge=0)

    primary_damage: int = Field(10, gt=0)
    primary_ammo_cost: int = Field(1, ge=0)
    primary_hit_short: float = Field(0.7, ge=0, le=1)
    primary_hit_medium: float = Field(0.4, ge=0, le=1)
    primary_hit_far: float = Field(0.15, ge=0, le=1)
    secondary_damage: int = Field(25, gt=0)
    secondary_ammo_cost: int = Field(3, ge=0)
    secondary_hit_short: float = Field(0.5, ge=0, le=1)
    secondary_hit_medium: float = Field(0.25, ge=0, le=1)
    secondary_hit_far: float = Field(0.05, ge=0, le=1)
    # ChangeWeapon toggles to the slow/strong profile: damage up, accuracy down.
    alt_weapon_damage_scale: float = Field(1.5, gt=0)
    alt_weapon_accuracy_scale: float = Field(0.8, gt=0, le=1)

    evasion_factor: float = Field(0.5, ge=0, le=1, description="Hit chance multiplier when dodging/jumping")
    crouch_factor: float = Field(0.75, ge=0, le=1, description="Hit chance multiplier vs crouched targets")
    walk_speed: int = Field(1, ge=1)
    run_speed: int = Field(2, ge=1)

    health_pack: int = Field(25, gt=0)
    ammo_pack: int = Field(30, gt=0)
    adrenaline_pill: int = Field(1, gt=0)
    spree_kills: int = Field(3, gt=0, description="Kills in one life that grant adrenaline")

    @model_validator(mode="after")
    def _check(self) -> "ArenaConfig":
        if not self.short_range < self.medium_range:
            raise ValueError("distance buckets must satisfy short_range < medium_range")
        return self

    @property
    def ammo_costs(self) -> tuple[int, int]:
        return (self.primary_ammo_cost, self.secondary_ammo_cost)

    def load_layout(self) -> Layout:
        if self.layout_path:
            try:
                text = Path(self.layout_path).read_text(encoding="utf-8")
            except OSError as e:
                raise ConfigError(
                    f"cannot read layout {self.layout_path}: {e}", error_code="config.unreadable"
                )
            return parse_layout(text)
        return parse_layout(self.layout)

    def distance_bucket(self, distance: float) -> Distance:
        if distance <= self.short_range:
            return Distance.SHORT
        if distance <= self.medium_range:
            return Distance.MEDIUM
        return Distance.FAR

    def hit_probability(self, fire_mode: FireMode, bucket: Distance) -> float:
        prefix = fire_mode.value
        return getattr(self, f"{prefix}_hit_{bucket.value}")

    def damage(self, fire_mode: FireMode) -> int:
        return getattr(self, f"{fire_mode.value}_damage")

    def ammo_cost(self, fire_mode: FireMode) -> int:
        return getattr(self, f"{fire_mode.value}_ammo_cost")

    @classmethod
    def from_mapping(cls, values: dict[str, str]) -> "ArenaConfig":
        unknown = sorted(set(values) - set(cls.model_fields))
        if unknown:
            raise ConfigError(
                f"unknown arena config keys: {', '.join(unknown)}", error_code="config.unknown_key"
            )
        cleaned = {k: (None if v.lower() in ("", "none") else v) for k, v in values.items()}
        try:
            return cls.model_validate(cleaned)
        except ValidationError as e:
            raise ConfigError(f"invalid arena config: {e}", error_code="config.bad_value")

    @classmethod
    def from_file(cls, path: str | Path) -> "ArenaConfig":
        values = load_key_value_file(path)
        logger.info(f"Loaded arena config from {path} ({len(values)} keys)")
        return cls.from_mapping(values)
