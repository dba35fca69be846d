"""
Deterministic deathmatch micro-arena.

One `ArenaState` is one game. `step()` resolves every entity's intent in a
fixed phase order:

    1. intents       facing, turns, crouch, weapon swap, evasion
    2. movement      path steps or continuous walk/run, wall reflection, blocking
    3. combat        simultaneous hit rolls, damage applied in shooter id order
    4. pickups       health, ammo and adrenaline items, pickup respawns
    5. deaths        death bookkeeping and respawn timers
    6. respawns      entities whose delay has elapsed
    7. perception    saw_enemy, heard_noise, heard_pickup flags
    8. tick += 1

All randomness comes from the arena's seeded streams, so (seed, config,
intents) fully determines the event stream.
"""

import logging
import math
from collections.abc import Mapping

from ..dre.actions import ActionId, ItemMemory, legal_actions
from ..dre.perception import Perception
from ..models.enums import Distance, FireMode, Movement, PickupKind
from ..utils.rng import GameRNG
from .config import ArenaConfig, Cell
from .geometry import (
    DIRECTIONS,
    N_DIRECTIONS,
    NavGrid,
    distance,
    has_line_of_sight,
    heading_towards,
    in_front,
    offset,
    turn,
)
from .state import ArenaEvents, EntityEvents, EntityState, Intent, Pickup

logger = logging.getLogger(__name__)


class ArenaError(Exception):
    """Raised for unknown entities, perception of dead entities and illegal actions."""

    def __init__(self, message: str, error_code: str | None = None):
        super().__init__(message)
        self.error_code = error_code


def _reflect(heading: int, nav: NavGrid, cell: Cell) -> int:
    """Heading after bouncing off whatever blocks `cell` in direction `heading`."""
    dx, dy = DIRECTIONS[heading % N_DIRECTIONS]
    if dx and dy:
        x_open = nav.layout.is_floor((cell[0] + dx, cell[1]))
        y_open = nav.layout.is_floor((cell[0], cell[1] + dy))
        if not x_open:
            dx = -dx
        if not y_open:
            dy = -dy
        if x_open and y_open:
            dx, dy = -dx, -dy
    else:
        dx, dy = -dx, -dy
    return DIRECTIONS.index((dx, dy))


class ArenaState:
    def __init__(self, config: ArenaConfig, seed: int, names: list[str]):
        if not names:
            raise ArenaError("arena needs at least one entity", error_code="arena.unknown_entity")
        self.config = config
        self.layout = config.load_layout()
        self.nav = NavGrid(self.layout)
        self.rng = GameRNG(seed)
        self.combat_rng = self.rng.fork("combat")
        self.tick = 0
        self.center: Cell = (self.layout.width // 2, self.layout.height // 2)

        self.entities: dict[int, EntityState] = {}
        for eid, name in enumerate(names):
            ent = EntityState(id=eid, name=name, position=self.layout.player_spawns[0])
            ent.alive = False
            self.entities[eid] = ent
        for eid in self.entities:
            self.respawn(eid)

        self.pickups: list[Pickup] = [
            Pickup(id=i, kind=kind, position=cell)
            for i, (cell, kind) in enumerate(self.layout.pickup_spawns)
        ]
        self.memories: dict[int, ItemMemory] = {}
        # Per-entity scratch space owned by scripted opponents.
        self.script_states: dict[int, object] = {}
        self.last_events: dict[int, EntityEvents] = {eid: EntityEvents() for eid in self.entities}

    # ------------------------------------------------------------------
    # Lookups
    # ------------------------------------------------------------------

    def entity(self, eid: int) -> EntityState:
        try:
            return self.entities[eid]
        except KeyError:
            raise ArenaError(f"unknown entity {eid}", error_code="arena.unknown_entity")

    def attach_memory(self, eid: int, memory: ItemMemory) -> None:
        self.entity(eid)
        self.memories[eid] = memory

    def living(self) -> list[EntityState]:
        return [e for e in self.entities.values() if e.alive]

    def _occupied(self, exclude: int) -> set[Cell]:
        return {e.position for e in self.entities.values() if e.alive and e.id != exclude}

    def _visible_opponent(self, ent: EntityState) -> EntityState | None:
        best: tuple[float, int] | None = None
        found = None
        for other in self.entities.values():
            if other.id == ent.id or not other.alive:
                continue
            if not in_front(ent.facing, ent.position, other.position):
                continue
            if not has_line_of_sight(self.layout.walls, ent.position, other.position):
                continue
            key = (distance(ent.position, other.position), other.id)
            if best is None or key < best:
                best, found = key, other
        return found

    def _visible_pickup(self, ent: EntityState) -> Pickup | None:
        best: tuple[float, int] | None = None
        found = None
        for pickup in self.pickups:
            if not pickup.present:
                continue
            if not in_front(ent.facing, ent.position, pickup.position):
                continue
            if not has_line_of_sight(self.layout.walls, ent.position, pickup.position):
                continue
            key = (distance(ent.position, pickup.position), pickup.id)
            if best is None or key < best:
                best, found = key, pickup
        return found

    def can_see(self, eid: int, target: int) -> bool:
        ent, other = self.entity(eid), self.entity(target)
        return (
            ent.alive
            and other.alive
            and in_front(ent.facing, ent.position, other.position)
            and has_line_of_sight(self.layout.walls, ent.position, other.position)
        )

    # ------------------------------------------------------------------
    # Perception
    # ------------------------------------------------------------------

    def perceive(self, eid: int) -> Perception:
        ent = self.entity(eid)
        if not ent.alive:
            raise ArenaError("no perception while dead", error_code="arena.dead_perception")

        last = self.last_events[eid]
        opponent = self._visible_opponent(ent)
        pickup = self._visible_pickup(ent)
        bucket = (
            self.config.distance_bucket(distance(ent.position, opponent.position))
            if opponent
            else Distance.NO
        )
        return Perception(
            being_hit=last.took_damage,
            bumping=last.collided,
            hearing_noise=last.heard_noise,
            opponent_distance=bucket,
            see_enemy=opponent is not None,
            see_pickup=pickup is not None,
            hear_pickup=last.heard_pickup,
            health_pct=100.0 * ent.health / self.config.max_health,
            ammo_pct=100.0 * ent.ammo / self.config.max_ammo,
            movement=ent.movement,
            crouched=ent.crouched,
            visible_opponent=opponent.id if opponent else None,
            visible_pickup=pickup.id if pickup else None,
            ammo=ent.ammo,
            position=ent.position,
            opponent_cell=opponent.position if opponent else None,
            pickup_cell=pickup.position if pickup else None,
            pickup_kind=pickup.kind if pickup else None,
        )

    # ------------------------------------------------------------------
    # Actions -> intents
    # ------------------------------------------------------------------

    def _path_intent(self, ent: EntityState, goal: Cell | None) -> Intent:
        """One shortest-path step towards goal, walking and facing the step."""
        nxt = self.nav.step_towards(ent.position, goal) if goal is not None else None
        if nxt is None:
            return Intent()
        return Intent(path=[nxt], movement=Movement.WALK, face=heading_towards(ent.position, nxt))

    def _nearest_known_item(self, ent: EntityState, memory: ItemMemory) -> Cell | None:
        best: tuple[int, Cell] | None = None
        for cell in sorted(memory.items):
            if cell == ent.position:
                continue
            d = self.nav.path_distance(ent.position, cell)
            if d is not None and (best is None or (d, cell) < best):
                best = (d, cell)
        return best[1] if best else None

    def apply_action(
        self,
        eid: int,
        action: ActionId,
        rng: GameRNG,
        perception: Perception | None = None,
    ) -> Intent:
        """Translate a legal DRE action into an arena intent for this tick."""
        ent = self.entity(eid)
        p = perception if perception is not None else self.perceive(eid)
        memory = self.memories.setdefault(eid, ItemMemory())
        if action.index not in legal_actions(action.mode, p, memory, self.config.ammo_costs):
            raise ArenaError(f"illegal action {action}", error_code="arena.illegal_action")

        name = action.name
        if name in ("ShootPrimary", "ShootSecondary"):
            fire_mode = FireMode.PRIMARY if name == "ShootPrimary" else FireMode.SECONDARY
            return Intent(
                shoot=fire_mode,
                target=p.visible_opponent,
                face=heading_towards(ent.position, p.opponent_cell),
            )
        if name == "LastSeenOpponent":
            goal = memory.last_seen_opponent
            intent = self._path_intent(ent, goal)
            if not intent.path or intent.path[0] == goal:
                memory.forget_opponent()
            return intent
        if name == "StopMovement":
            return Intent(movement=Movement.STOP)
        if name == "Dodge":
            side = rng.choice((-2, 2))
            occupied = self._occupied(eid)
            for steps in (side, -side):
                heading = turn(ent.facing, steps)
                cell = offset(ent.position, heading)
                if self.nav.can_step(ent.position, heading) and cell not in occupied:
                    return Intent(path=[cell], evade=True)
            return Intent(evade=True)
        if name == "Jump":
            return Intent(evade=True)
        if name == "FacePlayerOrTurn":
            if p.opponent_cell is not None:
                return Intent(face=heading_towards(ent.position, p.opponent_cell))
            return Intent(turn=rng.randint(1, N_DIRECTIONS - 1))
        if name == "ChangeWeapon":
            return Intent(swap_weapon=True)
        if name in ("Move", "WalkAround"):
            return Intent(movement=Movement.WALK)
        if name == "RunAround":
            return Intent(movement=Movement.RUN)
        if name == "GoToPickup":
            return self._path_intent(ent, p.pickup_cell)
        if name == "RecordItem":
            memory.record_item(p.pickup_cell, p.pickup_kind)
            return Intent()
        if name == "GoToKnownItem":
            return self._path_intent(ent, self._nearest_known_item(ent, memory))
        if name == "EscapeOpponent":
            if p.opponent_cell is not None:
                away = heading_towards(p.opponent_cell, ent.position)
                return Intent(face=away, movement=Movement.RUN)
            return Intent(movement=Movement.RUN)
        if name == "TurnLeft":
            return Intent(turn=-rng.randint(1, 3))
        if name == "TurnRight":
            return Intent(turn=rng.randint(1, 3))
        if name == "Crouch":
            return Intent(toggle_crouch=True)
        raise ArenaError(f"illegal action {action}", error_code="arena.illegal_action")

    # ------------------------------------------------------------------
    # Respawn
    # ------------------------------------------------------------------

    def respawn(self, eid: int) -> None:
        """Place the entity at the free spawn point farthest from living enemies."""
        ent = self.entity(eid)
        enemies = [e.position for e in self.entities.values() if e.alive and e.id != eid]
        occupied = set(enemies)
        candidates = [c for c in self.layout.player_spawns if c not in occupied]
        if not candidates:
            candidates = list(self.layout.player_spawns)

        def score(cell: Cell) -> float:
            return min((distance(cell, e) for e in enemies), default=math.inf)

        best = candidates[0]
        for cell in candidates[1:]:
            if score(cell) > score(best):
                best = cell

        ent.position = best
        ent.facing = heading_towards(best, self.center)
        ent.health = self.config.max_health
        ent.ammo = self.config.max_ammo
        ent.movement = Movement.STOP
        ent.crouched = False
        ent.evading = False
        ent.weapon = 0
        ent.spree = 0
        ent.last_attacker = None
        ent.alive = True
        logger.debug(f"Entity {eid} respawned at {best} (tick {self.tick})")

    # ------------------------------------------------------------------
    # Step
    # ------------------------------------------------------------------

    def step(self, intents: Mapping[int, Intent]) -> ArenaEvents:
        for eid in intents:
            self.entity(eid)
        events = {eid: EntityEvents() for eid in self.entities}
        order = sorted(self.entities)
        plan = {eid: intents.get(eid) or Intent() for eid in order}

        self._resolve_intents(order, plan)
        self._resolve_movement(order, plan, events)
        self._resolve_combat(order, plan, events)
        pickup_cells = self._resolve_pickups(order, events)
        self._resolve_deaths(order)
        self._resolve_respawns(order)
        self._refresh_perception(order, events, pickup_cells)

        self.last_events = events
        result = ArenaEvents(tick=self.tick, entities=events)
        self.tick += 1
        return result

    def _resolve_intents(self, order: list[int], plan: dict[int, Intent]) -> None:
        for eid in order:
            ent, intent = self.entities[eid], plan[eid]
            if not ent.alive:
                continue
            if intent.face is not None:
                ent.facing = intent.face
            ent.facing = turn(ent.facing, intent.turn)
            if intent.toggle_crouch:
                ent.crouched = not ent.crouched
            if intent.movement is not None:
                ent.movement = intent.movement
            if ent.crouched and ent.movement == Movement.RUN:
                ent.movement = Movement.WALK
            if intent.swap_weapon:
                ent.weapon ^= 1
            ent.evading = intent.evade

    def _resolve_movement(
        self, order: list[int], plan: dict[int, Intent], events: dict[int, EntityEvents]
    ) -> None:
        cfg = self.config
        for eid in order:
            ent, intent = self.entities[eid], plan[eid]
            if not ent.alive:
                continue
            start = ent.position
            occupied = self._occupied(eid)
            if intent.path:
                steps = intent.path[: cfg.walk_speed] if ent.crouched else intent.path
                for cell in steps:
                    if cell not in self.nav.neighbours(ent.position) or cell in occupied:
                        events[eid].collided = True
                        break
                    ent.position = cell
            elif ent.movement != Movement.STOP:
                speed = cfg.run_speed if ent.movement == Movement.RUN else cfg.walk_speed
                for _ in range(speed):
                    if not self.nav.can_step(ent.position, ent.facing):
                        ent.facing = _reflect(ent.facing, self.nav, ent.position)
                        events[eid].collided = True
                        break
                    cell = offset(ent.position, ent.facing)
                    if cell in occupied:
                        events[eid].collided = True
                        break
                    ent.position = cell
            events[eid].moved = ent.position != start

    def _hit_chance(self, shooter: EntityState, target: EntityState, fire_mode: FireMode) -> float:
        cfg = self.config
        bucket = cfg.distance_bucket(distance(shooter.position, target.position))
        chance = cfg.hit_probability(fire_mode, bucket)
        if shooter.weapon:
            chance *= cfg.alt_weapon_accuracy_scale
        if target.evading:
            chance *= cfg.evasion_factor
        if target.crouched:
            chance *= cfg.crouch_factor
        return chance

    def _grant_adrenaline(self, ent: EntityState, ev: EntityEvents, units: int = 1) -> None:
        ent.adrenaline += units
        ev.gained_adrenaline = True

    def _resolve_combat(
        self, order: list[int], plan: dict[int, Intent], events: dict[int, EntityEvents]
    ) -> None:
        cfg = self.config
        hits: list[tuple[int, int, int]] = []
        for eid in order:
            ent, intent = self.entities[eid], plan[eid]
            if not ent.alive or intent.shoot is None:
                continue
            cost = cfg.ammo_cost(intent.shoot)
            if ent.ammo < cost:
                continue
            ent.ammo -= cost
            events[eid].fired = True
            # One roll per shot fired keeps the combat stream aligned across replays.
            roll = self.combat_rng.random()
            target = self.entities.get(intent.target) if intent.target is not None else None
            if target is None or target.id == eid or not self.can_see(eid, target.id):
                continue
            if roll < self._hit_chance(ent, target, intent.shoot):
                damage = cfg.damage(intent.shoot)
                if ent.weapon:
                    damage = round(damage * cfg.alt_weapon_damage_scale)
                hits.append((eid, target.id, damage))

        for shooter_id, target_id, damage in hits:
            shooter, target = self.entities[shooter_id], self.entities[target_id]
            if target.health <= 0:
                continue
            target.health = max(0, target.health - damage)
            target.last_attacker = shooter_id
            events[shooter_id].dealt_damage = True
            events[target_id].took_damage = True
            if target.health > 0:
                continue
            events[shooter_id].killed = True
            events[target_id].died = True
            shooter.kills += 1
            shooter.spree += 1
            if shooter.spree % cfg.spree_kills == 0:
                self._grant_adrenaline(shooter, events[shooter_id])
            if target.spree >= cfg.spree_kills:
                self._grant_adrenaline(shooter, events[shooter_id])

    def _resolve_pickups(
        self, order: list[int], events: dict[int, EntityEvents]
    ) -> list[tuple[Cell, int | None]]:
        """Returns (cell, taker id) for every pickup taken or respawned this tick."""
        cfg = self.config
        noisy: list[tuple[Cell, int | None]] = []
        for eid in order:
            ent = self.entities[eid]
            if not ent.alive or ent.health <= 0:
                continue
            for pickup in self.pickups:
                if not pickup.present or pickup.position != ent.position:
                    continue
                if pickup.kind == PickupKind.HEALTH:
                    if ent.health >= cfg.max_health:
                        continue
                    ent.health = min(cfg.max_health, ent.health + cfg.health_pack)
                elif pickup.kind == PickupKind.AMMO:
                    if ent.ammo >= cfg.max_ammo:
                        continue
                    ent.ammo = min(cfg.max_ammo, ent.ammo + cfg.ammo_pack)
                else:
                    self._grant_adrenaline(ent, events[eid], cfg.adrenaline_pill)
                pickup.present = False
                pickup.respawn_at = self.tick + cfg.pickup_respawn
                events[eid].picked_item = True
                noisy.append((pickup.position, eid))

        for pickup in self.pickups:
            if not pickup.present and self.tick >= pickup.respawn_at:
                pickup.present = True
                noisy.append((pickup.position, None))
        return noisy

    def _resolve_deaths(self, order: list[int]) -> None:
        for eid in order:
            ent = self.entities[eid]
            if ent.alive and ent.health <= 0:
                ent.alive = False
                ent.deaths += 1
                ent.spree = 0
                ent.movement = Movement.STOP
                ent.crouched = False
                ent.evading = False
                ent.respawn_at = self.tick + self.config.respawn_delay

    def _resolve_respawns(self, order: list[int]) -> None:
        for eid in order:
            ent = self.entities[eid]
            if not ent.alive and self.tick >= ent.respawn_at:
                self.respawn(eid)

    def _refresh_perception(
        self,
        order: list[int],
        events: dict[int, EntityEvents],
        pickup_cells: list[tuple[Cell, int | None]],
    ) -> None:
        radius = self.config.hearing_radius
        shooters = [self.entities[eid] for eid in order if events[eid].fired]
        for eid in order:
            ent, ev = self.entities[eid], events[eid]
            ev.health_pct = 100.0 * ent.health / self.config.max_health
            if not ent.alive:
                continue
            ev.heard_noise = any(
                s.id != eid and distance(s.position, ent.position) <= radius for s in shooters
            )
            ev.heard_pickup = any(
                taker != eid and distance(cell, ent.position) <= radius
                for cell, taker in pickup_cells
            )
            ev.saw_enemy = self._visible_opponent(ent) is not None
