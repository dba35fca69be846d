"""Tests for the per-mode action tables, item memory and legality rules."""

import pytest

from app.dre.actions import (
    ACTION_NAMES,
    DANGER_ACTIONS,
    EXPLORE_ACTIONS,
    REPLENISH_ACTIONS,
    ItemMemory,
    action_id,
    legal_actions,
)
from app.dre.perception import Perception
from app.models.enums import Distance, Mode, PickupKind


def _names(mode: Mode, legal: frozenset[int]) -> set[str]:
    return {ACTION_NAMES[mode][i] for i in legal}


def _enemy(**kwargs) -> Perception:
    return Perception(
        see_enemy=True, opponent_distance=Distance.MEDIUM, opponent_cell=(4, 4), **kwargs
    )


class TestTables:
    def test_sizes(self):
        assert (len(DANGER_ACTIONS), len(REPLENISH_ACTIONS), len(EXPLORE_ACTIONS)) == (8, 7, 6)

    def test_action_id_by_name_and_index(self):
        by_name = action_id(Mode.REPLENISH, "GoToPickup")
        assert by_name.index == 3
        assert action_id(Mode.REPLENISH, 3) == by_name
        assert str(by_name) == "Replenish:GoToPickup"

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            action_id(Mode.EXPLORE, "ShootPrimary")


class TestItemMemory:
    def test_observe_tracks_last_seen(self):
        memory = ItemMemory()
        memory.observe(_enemy())
        memory.observe(Perception())
        assert memory.last_seen_opponent == (4, 4)
        memory.forget_opponent()
        assert memory.last_seen_opponent is None

    def test_record_item(self):
        memory = ItemMemory()
        assert memory.is_empty
        memory.record_item((2, 3), PickupKind.AMMO)
        memory.record_item((2, 3), PickupKind.HEALTH)
        assert memory.items == {(2, 3): PickupKind.HEALTH}


class TestLegality:
    def test_explore_always_full(self):
        assert legal_actions(Mode.EXPLORE, Perception(), ItemMemory()) == frozenset(range(6))

    def test_danger_without_enemy_or_memory(self):
        legal = _names(Mode.DANGER, legal_actions(Mode.DANGER, Perception(), ItemMemory()))
        assert legal == {"StopMovement", "Dodge", "Jump", "FacePlayerOrTurn", "ChangeWeapon"}

    def test_danger_with_enemy_in_view(self):
        memory = ItemMemory()
        p = _enemy()
        memory.observe(p)
        assert legal_actions(Mode.DANGER, p, memory) == frozenset(range(8))

    @pytest.mark.parametrize(
        ("ammo", "expected"),
        [(0, set()), (2, {"ShootPrimary"}), (3, {"ShootPrimary", "ShootSecondary"})],
    )
    def test_shooting_needs_rounds(self, ammo, expected):
        legal = _names(Mode.DANGER, legal_actions(Mode.DANGER, _enemy(ammo=ammo), ItemMemory()))
        assert legal & {"ShootPrimary", "ShootSecondary"} == expected

    def test_custom_ammo_costs(self):
        legal = legal_actions(Mode.DANGER, _enemy(ammo=2), ItemMemory(), ammo_costs=(2, 5))
        assert "ShootPrimary" in _names(Mode.DANGER, legal)
        assert "ShootSecondary" not in _names(Mode.DANGER, legal)

    def test_replenish_blind(self):
        legal = _names(Mode.REPLENISH, legal_actions(Mode.REPLENISH, Perception(), ItemMemory()))
        assert legal == {"Move", "EscapeOpponent"}

    def test_replenish_with_pickup_and_memory(self):
        memory = ItemMemory()
        memory.record_item((1, 1), PickupKind.HEALTH)
        p = Perception(see_pickup=True, pickup_cell=(5, 5), pickup_kind=PickupKind.AMMO)
        legal = _names(Mode.REPLENISH, legal_actions(Mode.REPLENISH, p, memory))
        assert legal == {"Move", "GoToPickup", "RecordItem", "GoToKnownItem", "EscapeOpponent"}
