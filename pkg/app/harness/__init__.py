"""Experiment orchestration: games, sweeps, baselines, metrics and result files."""

from .game import GameOutcome, play_game, run_game
from .metrics import compare, mean_std, rank_correlation, run_means, summarize
from .persistence import (
    RESULTS_COLUMNS,
    ResultsError,
    read_results_csv,
    write_events_jsonl,
    write_lives_jsonl,
    write_qtable_dumps,
    write_results_csv,
)
from .sweep import (
    baseline_seed,
    cell_seed,
    run_baseline,
    run_baseline_outcomes,
    run_sweep,
    run_sweep_outcomes,
)

__all__ = [
    "RESULTS_COLUMNS",
    "GameOutcome",
    "ResultsError",
    "baseline_seed",
    "cell_seed",
    "compare",
    "mean_std",
    "play_game",
    "rank_correlation",
    "read_results_csv",
    "run_baseline",
    "run_baseline_outcomes",
    "run_game",
    "run_means",
    "run_sweep",
    "run_sweep_outcomes",
    "summarize",
    "write_events_jsonl",
    "write_lives_jsonl",
    "write_qtable_dumps",
    "write_results_csv",
]
