"""
Grid sweeps and random-action baselines.

Every game gets a seed derived by stable hashing from the base seed and its
grid position, so results do not depend on execution order or on whether the
games ran in parallel.
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import NamedTuple

from ..models.enums import Policy
from ..models.request import ExperimentConfig
from ..models.response import SweepReport
from ..utils.rng import derive_seed
from .game import GameOutcome, run_game
from .metrics import summarize

logger = logging.getLogger(__name__)


class GameJob(NamedTuple):
    cfg: ExperimentConfig
    gamma: float | None
    lam: float | None
    seed: int
    policy: Policy
    run: int


def cell_seed(base_seed: int, gamma_index: int, lambda_index: int, run: int) -> int:
    return derive_seed(base_seed, "cell", gamma_index, lambda_index, run)


def baseline_seed(base_seed: int, game: int) -> int:
    return derive_seed(base_seed, "baseline", game)


def sweep_jobs(cfg: ExperimentConfig) -> list[GameJob]:
    base = cfg.seed
    return [
        GameJob(cfg, gamma, lam, cell_seed(base, gi, li, run), Policy.LEARNING, run)
        for run in range(cfg.runs)
        for gi, gamma in enumerate(cfg.gammas)
        for li, lam in enumerate(cfg.lambdas)
    ]


def baseline_jobs(cfg: ExperimentConfig, games: int) -> list[GameJob]:
    base = cfg.seed
    return [GameJob(cfg, None, None, baseline_seed(base, g), Policy.RANDOM, g) for g in range(games)]


def default_parallelism(n_jobs: int) -> int:
    return max(1, min(n_jobs, os.cpu_count() or 1))


def _run_job(job: GameJob) -> GameOutcome:
    return run_game(job.cfg, job.gamma, job.lam, job.seed, job.policy, job.run)


def execute(jobs: list[GameJob], parallel: int | None = None) -> list[GameOutcome]:
    """Run the jobs, returning outcomes in job order."""
    workers = default_parallelism(len(jobs)) if not parallel else min(parallel, len(jobs))
    if workers <= 1:
        outcomes = []
        for i, job in enumerate(jobs, start=1):
            outcomes.append(_run_job(job))
            logger.info(f"Finished game {i}/{len(jobs)}")
        return outcomes

    logger.info(f"Running {len(jobs)} games on {workers} worker processes")
    done: dict[int, GameOutcome] = {}
    with ProcessPoolExecutor(max_workers=workers) as executor:
        fut_to_idx = {executor.submit(_run_job, job): idx for idx, job in enumerate(jobs)}
        for fut in as_completed(fut_to_idx):
            done[fut_to_idx[fut]] = fut.result()
            logger.info(f"Finished game {len(done)}/{len(jobs)}")
    return [done[idx] for idx in range(len(jobs))]


def run_sweep_outcomes(cfg: ExperimentConfig, parallel: int | None = None) -> list[GameOutcome]:
    jobs = sweep_jobs(cfg)
    logger.info(
        f"Sweep: {cfg.runs} run(s) x {cfg.grid_size} games, {cfg.deaths_per_game} deaths each"
    )
    return execute(jobs, parallel)


def run_sweep(cfg: ExperimentConfig, parallel: int | None = None) -> SweepReport:
    outcomes = run_sweep_outcomes(cfg, parallel)
    return summarize([o.record for o in outcomes], Policy.LEARNING)


def run_baseline_outcomes(
    cfg: ExperimentConfig, games: int | None = None, parallel: int | None = None
) -> list[GameOutcome]:
    n = games if games is not None else cfg.baseline_games
    if n < 1:
        raise ValueError("baseline needs at least one game")
    logger.info(f"Baseline: {n} random-action game(s)")
    return execute(baseline_jobs(cfg, n), parallel)


def run_baseline(
    cfg: ExperimentConfig, games: int | None = None, parallel: int | None = None
) -> SweepReport:
    outcomes = run_baseline_outcomes(cfg, games, parallel)
    return summarize([o.record for o in outcomes], Policy.RANDOM)
