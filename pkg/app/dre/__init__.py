"""Danger / Replenish / Explore layer: encoders, actions, rewards and the arbiter."""

from .actions import ACTION_NAMES, ActionId, ItemMemory, action_id, legal_actions
from .arbiter import DreBot, select_mode
from .perception import (
    STATE_COUNTS,
    STATE_NAMES,
    ModeError,
    Perception,
    derive_levels,
    encode_danger,
    encode_explore,
    encode_replenish,
    encode_state,
)
from .rewards import REWARD_POINTS, REWARD_SCALE, RewardBreakdown, compute_reward

__all__ = [
    "ACTION_NAMES",
    "REWARD_POINTS",
    "REWARD_SCALE",
    "STATE_COUNTS",
    "STATE_NAMES",
    "ActionId",
    "DreBot",
    "ItemMemory",
    "ModeError",
    "Perception",
    "RewardBreakdown",
    "action_id",
    "compute_reward",
    "derive_levels",
    "encode_danger",
    "encode_explore",
    "encode_replenish",
    "encode_state",
    "legal_actions",
    "select_mode",
]
