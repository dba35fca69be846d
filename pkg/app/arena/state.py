"""Mutable simulation records: entities, pickups, intents and per-tick events."""

import hashlib
import json
from dataclasses import asdict, dataclass, field

from ..models.enums import FireMode, Movement, PickupKind
from .config import Cell

DRE_BOT_ID = 0


@dataclass(slots=True)
class EntityState:
    id: int
    name: str
    position: Cell
    facing: int = 0
    health: int = 100
    ammo: int = 100
    movement: Movement = Movement.STOP
    crouched: bool = False
    alive: bool = True
    kills: int = 0
    deaths: int = 0
    adrenaline: int = 0
    # 0 = fast/weak profile, 1 = slow/strong profile
    weapon: int = 0
    spree: int = 0
    respawn_at: int = 0
    evading: bool = False
    last_attacker: int | None = None


@dataclass(slots=True)
class Pickup:
    id: int
    kind: PickupKind
    position: Cell
    present: bool = True
    respawn_at: int = 0


@dataclass(slots=True)
class Intent:
    """What one entity tries to do this tick; resolved by ArenaState.step."""

    face: int | None = None
    turn: int = 0
    movement: Movement | None = None
    path: list[Cell] = field(default_factory=list)
    toggle_crouch: bool = False
    shoot: FireMode | None = None
    target: int | None = None
    evade: bool = False
    swap_weapon: bool = False


@dataclass(slots=True)
class EntityEvents:
    dealt_damage: bool = False
    took_damage: bool = False
    killed: bool = False
    died: bool = False
    picked_item: bool = False
    gained_adrenaline: bool = False
    collided: bool = False
    moved: bool = False
    saw_enemy: bool = False
    heard_noise: bool = False
    heard_pickup: bool = False
    fired: bool = False
    health_pct: float = 100.0


@dataclass(slots=True)
class ArenaEvents:
    tick: int
    entities: dict[int, EntityEvents]

    def __getitem__(self, entity_id: int) -> EntityEvents:
        return self.entities[entity_id]

    def to_records(self) -> list[dict]:
        """One JSON-ready dict per entity, in id order."""
        return [
            {"tick": self.tick, "entity": eid, **asdict(ev)}
            for eid, ev in sorted(self.entities.items())
        ]


class EventDigest:
    """Running SHA-256 over the canonical JSON lines of an event stream."""

    def __init__(self):
        self._hash = hashlib.sha256()

    def update(self, events: ArenaEvents) -> None:
        for record in events.to_records():
            self._hash.update(json.dumps(record, sort_keys=True).encode("utf-8"))
            self._hash.update(b"\n")

    def hexdigest(self) -> str:
        return self._hash.hexdigest()


def events_digest(stream: list[ArenaEvents]) -> str:
    digest = EventDigest()
    for events in stream:
        digest.update(events)
    return digest.hexdigest()
