"""
One deathmatch game: the DRE-Bot against the scripted opponents.

Per tick: perceive -> arbiter_step -> apply_action -> opponent scripts ->
arena step -> compute_reward -> reward to the bot (or end_life on death).
"""

import logging
from typing import NamedTuple

import numpy as np

from ..arena import (
    DRE_BOT_ID,
    ArenaEvents,
    ArenaState,
    EventDigest,
    Intent,
    OpponentScript,
    scripted_opponent_intent,
)
from ..dre import REWARD_SCALE, DreBot, compute_reward
from ..models.enums import Mode, Policy
from ..models.request import ExperimentConfig
from ..models.response import RunRecord
from ..utils.rng import GameRNG

logger = logging.getLogger(__name__)


class GameOutcome(NamedTuple):
    record: RunRecord
    q_tables: dict[Mode, np.ndarray]
    events: list[ArenaEvents] | None = None


def run_game(
    cfg: ExperimentConfig,
    gamma: float | None,
    lam: float | None,
    seed: int,
    policy: Policy = Policy.LEARNING,
    run: int = 0,
    record_events: bool = False,
) -> GameOutcome:
    """Play one game; any error is folded into an incomplete diagnostic record."""
    try:
        return _run_game(cfg, gamma, lam, seed, policy, run, record_events)
    except Exception as e:
        logger.exception(f"Game aborted (gamma={gamma}, lambda={lam}, seed={seed}): {e}")
        record = RunRecord(
            policy=policy,
            run=run,
            gamma=gamma,
            lam=lam,
            seed=seed,
            completed=False,
            error=f"{type(e).__name__}: {e}",
        )
        return GameOutcome(record=record, q_tables={})


def play_game(
    cfg: ExperimentConfig,
    gamma: float | None,
    lam: float | None,
    seed: int,
    policy: Policy = Policy.LEARNING,
    run: int = 0,
) -> RunRecord:
    return run_game(cfg, gamma, lam, seed, policy, run).record


def _run_game(
    cfg: ExperimentConfig,
    gamma: float | None,
    lam: float | None,
    seed: int,
    policy: Policy,
    run: int,
    record_events: bool,
) -> GameOutcome:
    root = GameRNG(seed)
    names = ["dre-bot"] + [s.value for s in cfg.opponents]
    arena = ArenaState(cfg.arena, root.fork("arena").seed, names)
    bot = DreBot(
        cfg.learner_params(gamma or 0.0, lam or 0.0),
        root.fork("bot"),
        policy=policy,
        danger_priority=cfg.danger_priority,
        ammo_costs=cfg.arena.ammo_costs,
    )
    arena.attach_memory(DRE_BOT_ID, bot.memory)
    action_rng = root.fork("actions")
    scripts = {
        eid: OpponentScript(strategy=strategy) for eid, strategy in enumerate(cfg.opponents, start=1)
    }
    script_rngs = {eid: root.fork(f"opponent-{eid}") for eid in scripts}

    tick_limit = cfg.max_ticks
    if cfg.arena.tick_limit is not None:
        tick_limit = min(tick_limit, cfg.arena.tick_limit)

    logger.info(f"Game start: policy={policy.value} gamma={gamma} lambda={lam} seed={seed}")
    me = arena.entity(DRE_BOT_ID)
    digest = EventDigest()
    stream: list[ArenaEvents] | None = [] if record_events else None
    total_points = 0
    life_points = 0
    life_rewards: list[float] = []

    while me.deaths < cfg.deaths_per_game and arena.tick < tick_limit:
        intents: dict[int, Intent] = {}
        acted = me.alive
        if acted:
            p = arena.perceive(DRE_BOT_ID)
            action = bot.arbiter_step(p)
            intents[DRE_BOT_ID] = arena.apply_action(DRE_BOT_ID, action, action_rng, p)
        for eid, script in scripts.items():
            intents[eid] = scripted_opponent_intent(arena, eid, script, script_rngs[eid])

        events = arena.step(intents)
        digest.update(events)
        if stream is not None:
            stream.append(events)
        if not acted:
            continue

        breakdown = compute_reward(events[DRE_BOT_ID])
        total_points += breakdown.total_points
        life_points += breakdown.total_points
        if events[DRE_BOT_ID].died:
            bot.end_life(breakdown.total)
            life_rewards.append(life_points / REWARD_SCALE)
            life_points = 0
        else:
            bot.observe_reward(breakdown.total)

    completed = me.deaths >= cfg.deaths_per_game
    total_reward = total_points / REWARD_SCALE
    record = RunRecord(
        policy=policy,
        run=run,
        gamma=gamma,
        lam=lam,
        seed=seed,
        total_reward=total_reward,
        total_points=total_points,
        kills=me.kills,
        deaths=me.deaths,
        kd_difference=me.kills - me.deaths,
        avg_reward=total_reward / me.deaths if me.deaths else 0.0,
        life_rewards=life_rewards,
        mode_steps=dict(bot.mode_steps),
        ticks=arena.tick,
        completed=completed,
        error=None if completed else f"tick limit {tick_limit} reached after {me.deaths} deaths",
        events_digest=digest.hexdigest(),
    )
    if completed:
        logger.info(
            f"Game done: gamma={gamma} lambda={lam} seed={seed} total={total_reward:.2f} "
            f"K-D={record.kd_difference} ticks={arena.tick}"
        )
    else:
        logger.warning(f"Game incomplete: {record.error}")
    q_tables = {mode: learner.q.values.copy() for mode, learner in bot.learners.items()}
    return GameOutcome(record=record, q_tables=q_tables, events=stream)
