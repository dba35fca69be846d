from .config import DEFAULT_LAYOUT, ArenaConfig, Layout, parse_layout
from .opponents import OpponentScript, patrol_waypoints, scripted_opponent_intent
from .sim import ArenaError, ArenaState
from .state import (
    DRE_BOT_ID,
    ArenaEvents,
    EntityEvents,
    EntityState,
    EventDigest,
    Intent,
    Pickup,
    events_digest,
)

__all__ = [
    "DEFAULT_LAYOUT",
    "DRE_BOT_ID",
    "ArenaConfig",
    "ArenaError",
    "ArenaEvents",
    "ArenaState",
    "EntityEvents",
    "EntityState",
    "EventDigest",
    "Intent",
    "Layout",
    "OpponentScript",
    "Pickup",
    "events_digest",
    "parse_layout",
    "patrol_waypoints",
    "scripted_opponent_intent",
]
