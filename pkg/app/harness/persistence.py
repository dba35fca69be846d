"""
Result files.

    results CSV     run,gamma,lambda,seed,total_reward,kills,deaths,kd_diff,avg_reward
    lives JSONL     one line per life: game key, life index, reward
    events JSONL    one line per tick per entity
    Q-table dumps   qtables/<game key>_<mode>.csv

Random-action rows leave gamma and lambda empty.
"""

import csv
import json
import logging
import math
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np

from ..arena.state import ArenaEvents
from ..dre.rewards import REWARD_SCALE
from ..learning.qtable_io import write_qtable_csv
from ..learning.sarsa import QTable
from ..models.enums import Mode, Policy
from ..models.response import RunRecord

logger = logging.getLogger(__name__)

RESULTS_COLUMNS = (
    "run",
    "gamma",
    "lambda",
    "seed",
    "total_reward",
    "kills",
    "deaths",
    "kd_diff",
    "avg_reward",
)


class ResultsError(Exception):
    """Raised for empty or malformed results files; the message lists offending rows."""

    def __init__(self, message: str, error_code: str | None = None, rows: list[str] | None = None):
        super().__init__(message)
        self.error_code = error_code
        self.rows = rows or []


def _param(value: float | None) -> str:
    return "" if value is None else repr(value)


def write_results_csv(path: Path, records: Iterable[RunRecord]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RESULTS_COLUMNS)
        for r in records:
            writer.writerow(
                (
                    r.run,
                    _param(r.gamma),
                    _param(r.lam),
                    r.seed,
                    f"{r.total_reward:.5f}",
                    r.kills,
                    r.deaths,
                    r.kd_difference,
                    repr(r.avg_reward),
                )
            )
    logger.info(f"Wrote results to {path}")
    return path


def _parse_row(row: dict[str, str]) -> RunRecord:
    gamma = row["gamma"].strip()
    lam = row["lambda"].strip()
    if bool(gamma) != bool(lam):
        raise ValueError("gamma and lambda must both be set or both be empty")
    total = float(row["total_reward"])
    if not math.isfinite(total):
        raise ValueError(f"non-finite total_reward {row['total_reward']!r}")
    kills = int(row["kills"])
    deaths = int(row["deaths"])
    kd = int(row["kd_diff"])
    if kd != kills - deaths:
        raise ValueError(f"kd_diff {kd} != kills - deaths ({kills - deaths})")
    float(row["avg_reward"])
    return RunRecord(
        policy=Policy.LEARNING if gamma else Policy.RANDOM,
        run=int(row["run"]),
        gamma=float(gamma) if gamma else None,
        lam=float(lam) if lam else None,
        seed=int(row["seed"]),
        total_reward=total,
        total_points=round(total * REWARD_SCALE),
        kills=kills,
        deaths=deaths,
        kd_difference=kd,
        # recomputed so that files with rounded averages still load
        avg_reward=total / deaths if deaths else 0.0,
    )


def read_results_csv(path: Path) -> list[RunRecord]:
    path = Path(path)
    try:
        fh = path.open(newline="", encoding="utf-8")
    except OSError as e:
        raise ResultsError(f"cannot read {path}: {e}", error_code="results.malformed")
    with fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ResultsError(f"{path}: empty results file", error_code="results.empty")
        missing = [c for c in RESULTS_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise ResultsError(
                f"{path}: missing columns {', '.join(missing)}", error_code="results.malformed"
            )
        records: list[RunRecord] = []
        bad: list[str] = []
        for lineno, row in enumerate(reader, start=2):
            if not any(isinstance(v, str) and v.strip() for v in row.values()):
                continue
            if None in row:
                bad.append(f"row {lineno}: too many fields")
                continue
            try:
                records.append(_parse_row(row))
            except (ValueError, TypeError, AttributeError) as e:
                bad.append(f"row {lineno}: {e}")

    if bad:
        for line in bad:
            logger.warning(f"{path}: {line}")
        raise ResultsError(
            f"{path}: malformed rows:\n" + "\n".join(bad), error_code="results.malformed", rows=bad
        )
    if not records:
        raise ResultsError(f"{path}: no result rows", error_code="results.empty")
    return records


def write_lives_jsonl(path: Path, records: Iterable[RunRecord]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        for r in records:
            for life, reward in enumerate(r.life_rewards):
                line = {"game": r.key, "seed": r.seed, "life": life, "reward": reward}
                fh.write(json.dumps(line, sort_keys=True) + "\n")
    return path


def write_events_jsonl(path: Path, stream: Sequence[ArenaEvents]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        for events in stream:
            for record in events.to_records():
                fh.write(json.dumps(record, sort_keys=True) + "\n")
    return path


def write_qtable_dumps(directory: Path, key: str, q_tables: dict[Mode, np.ndarray]) -> list[Path]:
    directory = Path(directory)
    return [
        write_qtable_csv(directory / f"{key}_{mode.value}.csv", QTable.from_array(values))
        for mode, values in q_tables.items()
    ]
