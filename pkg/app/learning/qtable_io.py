"""
Q-table persistence: CSV with header `state,action,q`, one row per cell.

Values are written with repr(), the shortest decimal string that parses back
to the identical float, so a write/read cycle is lossless.
"""

import csv
import logging
from collections.abc import Sequence
from pathlib import Path

import numpy as np

from .sarsa import LearnerError, QTable, SarsaLearner

logger = logging.getLogger(__name__)

QTABLE_HEADER = ("state", "action", "q")


def write_qtable_csv(path: Path, table: QTable) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(QTABLE_HEADER)
        for s in range(table.n_states):
            for a in range(table.n_actions):
                writer.writerow((s, a, repr(float(table.values[s, a]))))
    return path


def read_qtable_csv(path: Path) -> QTable:
    """Read a table written by write_qtable_csv; every cell must be present once."""
    path = Path(path)
    cells: dict[tuple[int, int], float] = {}
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != QTABLE_HEADER:
            raise LearnerError(
                f"{path}: expected header {','.join(QTABLE_HEADER)}",
                error_code="learner.bad_qtable",
            )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                s, a, q = int(row[0]), int(row[1]), float(row[2])
            except (ValueError, IndexError):
                raise LearnerError(
                    f"{path}:{lineno}: malformed row {row!r}", error_code="learner.bad_qtable"
                )
            if (s, a) in cells:
                raise LearnerError(
                    f"{path}:{lineno}: duplicate cell ({s}, {a})",
                    error_code="learner.bad_qtable",
                )
            cells[(s, a)] = q

    if not cells:
        raise LearnerError(f"{path}: no rows", error_code="learner.bad_qtable")
    n_states = max(s for s, _ in cells) + 1
    n_actions = max(a for _, a in cells) + 1
    if len(cells) != n_states * n_actions or min(min(k) for k in cells) < 0:
        raise LearnerError(
            f"{path}: table is not a dense {n_states}x{n_actions} grid",
            error_code="learner.bad_qtable",
        )
    table = QTable(n_states, n_actions)
    for (s, a), q in cells.items():
        table.values[s, a] = q
    return table


def describe_policy(
    source: SarsaLearner | QTable,
    state_names: Sequence[str] | None = None,
    action_names: Sequence[str] | None = None,
) -> list[str]:
    """Human-readable greedy policy lines, e.g. "BeingHit=T|... -> ShootPrimary (0.4123)"."""
    table = source.q if isinstance(source, SarsaLearner) else source
    lines = []
    for s, a in enumerate(np.argmax(table.values, axis=1)):
        s_label = state_names[s] if state_names else str(s)
        a_label = action_names[a] if action_names else str(a)
        lines.append(f"{s_label} -> {a_label} ({table.values[s, a]:.4f})")
    return lines
