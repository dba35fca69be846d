"""
Fixed-strategy opponents.

patroller  walks a fixed loop through the spawn and pickup points and fires
           the primary weapon at enemies in short or medium range.
hunter     runs towards the last place it saw an enemy, fires whenever it
           can see one and goes for health when its own health is low.

Both turn towards whoever hit them last when no enemy is in view. Scripts
draw randomness only from the stream they are given.
"""

from dataclasses import dataclass

from pydantic import BaseModel, ConfigDict, Field

from ..models.enums import Distance, FireMode, Movement, OpponentStrategy, PickupKind
from ..utils.rng import GameRNG
from .config import Cell
from .geometry import heading_towards
from .sim import ArenaState
from .state import EntityState, Intent


class OpponentScript(BaseModel):
    model_config = ConfigDict(frozen=True)

    strategy: OpponentStrategy
    low_health_pct: float = Field(40.0, ge=0, le=100, description="Hunter seeks health at or below this")
    low_ammo_pct: float = Field(20.0, ge=0, le=100, description="Hunter seeks ammo at or below this")
    run_steps: int = Field(2, ge=1, description="Hunter path cells per tick")


@dataclass(slots=True)
class ScriptState:
    waypoint: int = 0
    last_seen: Cell | None = None
    wander_goal: Cell | None = None


def _state(arena: ArenaState, eid: int) -> ScriptState:
    state = arena.script_states.get(eid)
    if not isinstance(state, ScriptState):
        state = ScriptState()
        arena.script_states[eid] = state
    return state


def patrol_waypoints(arena: ArenaState) -> list[Cell]:
    return list(arena.layout.player_spawns) + [cell for cell, _ in arena.layout.pickup_spawns]


def _turn_to_attacker(arena: ArenaState, ent: EntityState, intent: Intent) -> None:
    if ent.last_attacker is None or not arena.last_events[ent.id].took_damage:
        return
    attacker = arena.entities.get(ent.last_attacker)
    if attacker is not None and attacker.alive:
        intent.face = heading_towards(ent.position, attacker.position)


def _nearest_pickup(arena: ArenaState, ent: EntityState, kind: PickupKind) -> Cell | None:
    best: tuple[int, int] | None = None
    goal = None
    for pickup in arena.pickups:
        if not pickup.present or pickup.kind != kind:
            continue
        d = arena.nav.path_distance(ent.position, pickup.position)
        if d is not None and (best is None or (d, pickup.id) < best):
            best, goal = (d, pickup.id), pickup.position
    return goal


def _patroller(arena: ArenaState, ent: EntityState, script: OpponentScript) -> Intent:
    state = _state(arena, ent.id)
    waypoints = patrol_waypoints(arena)
    p = arena.perceive(ent.id)
    intent = Intent(movement=Movement.WALK)

    if ent.position == waypoints[state.waypoint] or arena.last_events[ent.id].collided:
        state.waypoint = (state.waypoint + 1) % len(waypoints)
    nxt = arena.nav.step_towards(ent.position, waypoints[state.waypoint])
    if nxt is None:
        state.waypoint = (state.waypoint + 1) % len(waypoints)
    else:
        intent.path = [nxt]
        intent.face = heading_towards(ent.position, nxt)

    in_range = p.opponent_distance in (Distance.SHORT, Distance.MEDIUM)
    if in_range and ent.ammo >= arena.config.ammo_cost(FireMode.PRIMARY):
        intent.shoot = FireMode.PRIMARY
        intent.target = p.visible_opponent
        intent.face = heading_towards(ent.position, p.opponent_cell)
    elif not p.see_enemy:
        _turn_to_attacker(arena, ent, intent)
    return intent


def _hunter(arena: ArenaState, ent: EntityState, script: OpponentScript, rng: GameRNG) -> Intent:
    state = _state(arena, ent.id)
    cfg = arena.config
    p = arena.perceive(ent.id)
    intent = Intent(movement=Movement.RUN)

    if p.see_enemy:
        state.last_seen = p.opponent_cell

    goal: Cell | None = None
    if p.health_pct <= script.low_health_pct:
        if p.see_pickup and p.pickup_kind == PickupKind.HEALTH:
            goal = p.pickup_cell
        else:
            goal = _nearest_pickup(arena, ent, PickupKind.HEALTH)
    if goal is None and p.ammo_pct <= script.low_ammo_pct:
        goal = _nearest_pickup(arena, ent, PickupKind.AMMO)
    if goal is None and state.last_seen is not None and p.opponent_distance != Distance.SHORT:
        goal = state.last_seen
        if ent.position == goal:
            state.last_seen = None
            goal = None
    if goal is None and not p.see_enemy:
        if state.wander_goal is None or state.wander_goal == ent.position:
            state.wander_goal = rng.choice(arena.layout.floor_cells())
        goal = state.wander_goal

    if goal is not None:
        intent.path = arena.nav.path(ent.position, goal, script.run_steps)
        if intent.path:
            intent.face = heading_towards(ent.position, intent.path[0])
        elif goal == state.wander_goal:
            state.wander_goal = None

    if p.see_enemy:
        if p.opponent_distance == Distance.SHORT and ent.ammo >= cfg.ammo_cost(FireMode.SECONDARY):
            intent.shoot = FireMode.SECONDARY
        elif ent.ammo >= cfg.ammo_cost(FireMode.PRIMARY):
            intent.shoot = FireMode.PRIMARY
        if intent.shoot is not None:
            intent.target = p.visible_opponent
            intent.face = heading_towards(ent.position, p.opponent_cell)
    else:
        _turn_to_attacker(arena, ent, intent)
    return intent


def scripted_opponent_intent(
    arena: ArenaState, eid: int, script: OpponentScript, rng: GameRNG
) -> Intent:
    ent = arena.entity(eid)
    if not ent.alive:
        return Intent()
    if script.strategy == OpponentStrategy.PATROLLER:
        return _patroller(arena, ent, script)
    return _hunter(arena, ent, script, rng)
