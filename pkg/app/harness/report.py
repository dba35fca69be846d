"""
Plain-text report tables and SVG heatmaps of the gamma x lambda grid.
"""

import logging
from collections.abc import Sequence
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from ..models.enums import Policy  # noqa: E402
from ..models.response import RunMeans, RunRecord  # noqa: E402
from ..utils.helpers import format_param  # noqa: E402
from .metrics import compare, rank_correlation, summarize  # noqa: E402

logger = logging.getLogger(__name__)

METRICS = {
    "total_reward": ("Total Reward Received", "{:.2f}"),
    "kd_difference": ("Final Kill-Death Difference", "{:d}"),
}
CELL_WIDTH = 10


def _axes(records: Sequence[RunRecord]) -> tuple[list[float], list[float]]:
    gammas = sorted({r.gamma for r in records if r.gamma is not None})
    lambdas = sorted({r.lam for r in records if r.lam is not None})
    return gammas, lambdas


def grid_values(records: Sequence[RunRecord], run: int, metric: str) -> np.ndarray:
    """gamma x lambda matrix of one run; NaN where a game is missing or incomplete."""
    gammas, lambdas = _axes(records)
    grid = np.full((len(gammas), len(lambdas)), np.nan)
    for r in records:
        if r.run != run or not r.completed or r.gamma is None:
            continue
        grid[gammas.index(r.gamma), lambdas.index(r.lam)] = getattr(r, metric)
    return grid


def grid_table(records: Sequence[RunRecord], run: int, metric: str) -> str:
    title, fmt = METRICS[metric]
    gammas, lambdas = _axes(records)
    grid = grid_values(records, run, metric)
    lines = [f"{title} (Run {run + 1})"]
    header = "gamma\\lambda".ljust(14) + "".join(f"{lam:g}".rjust(CELL_WIDTH) for lam in lambdas)
    lines.append(header)
    lines.append("-" * len(header))
    for gi, gamma in enumerate(gammas):
        cells = []
        for li in range(len(lambdas)):
            value = grid[gi, li]
            if np.isnan(value):
                cells.append("n/a".rjust(CELL_WIDTH))
            else:
                v = int(value) if metric == "kd_difference" else float(value)
                cells.append(fmt.format(v).rjust(CELL_WIDTH))
        lines.append(f"{gamma:g}".ljust(14) + "".join(cells))
    return "\n".join(lines)


def _means_rows(rows: Sequence[tuple[str, float, float, float]], title: str) -> str:
    lines = [title]
    header = (
        "".ljust(12)
        + "Average Reward".rjust(16)
        + "Total Reward".rjust(14)
        + "K-D Difference".rjust(16)
    )
    lines.append(header)
    lines.append("-" * len(header))
    for label, avg, total, kd in rows:
        lines.append(
            label.ljust(12) + f"{avg:.2f}".rjust(16) + f"{total:.2f}".rjust(14) + f"{kd:.2f}".rjust(16)
        )
    return "\n".join(lines)


def averages_table(means: Sequence[RunMeans]) -> str:
    rows = [(m.label, m.avg_reward, m.total_reward, m.kd_difference) for m in means]
    return _means_rows(rows, "Run Averages")


def baseline_table(records: Sequence[RunRecord]) -> str:
    rows = [
        (f"Game {r.run + 1}", r.avg_reward, r.total_reward, float(r.kd_difference))
        for r in records
        if r.completed
    ]
    return _means_rows(rows, "Random Action Games")


def correlation_block(records: Sequence[RunRecord]) -> str:
    lines = ["Rank correlation (Spearman) of total reward"]
    for parameter in ("gamma", "lambda"):
        rho = rank_correlation(records, parameter)
        lines.append(f"  vs {parameter:<7} {'n/a' if rho is None else f'{rho:+.4f}'}")
    return "\n".join(lines)


def comparison_block(learning: Sequence[RunRecord], baseline: Sequence[RunRecord]) -> str:
    summary = compare(summarize(learning, Policy.LEARNING), summarize(baseline, Policy.RANDOM))
    lines = ["Learning vs random actions"]
    for m in (summary.total_reward, summary.kd_difference):
        lines.append(
            f"  {m.metric:<14} learning {m.learning_mean:.2f} (sd {m.learning_std:.2f})"
            f"  random {m.baseline_mean:.2f} (sd {m.baseline_std:.2f})"
            f"  diff {m.difference:+.2f}  -> {m.verdict.value}"
        )
    lines.append(f"  verdict: {summary.verdict.value}")
    return "\n".join(lines)


def build_report(
    learning: Sequence[RunRecord] | None = None,
    baseline: Sequence[RunRecord] | None = None,
) -> str:
    sections: list[str] = []
    means: list[RunMeans] = []
    if learning:
        report = summarize(learning, Policy.LEARNING)
        runs = sorted({r.run for r in learning})
        for metric in METRICS:
            for run in runs:
                sections.append(grid_table(learning, run, metric))
        means.extend(report.run_means)
        sections.append(correlation_block(learning))
        if report.incomplete:
            sections.append("Incomplete games: " + ", ".join(report.incomplete))
    if baseline:
        base_report = summarize(baseline, Policy.RANDOM)
        sections.append(baseline_table(baseline))
        means.extend(base_report.run_means)
        if base_report.incomplete:
            sections.append("Incomplete baseline games: " + ", ".join(base_report.incomplete))
    if means:
        sections.append(averages_table(means))
    if learning and baseline:
        sections.append(comparison_block(learning, baseline))
    return "\n\n".join(sections) + "\n"


def write_heatmap_svg(path: Path, records: Sequence[RunRecord], run: int, metric: str) -> Path:
    """Heatmap of one run's grid, written as SVG with no timestamp so reruns are identical."""
    title, fmt = METRICS[metric]
    gammas, lambdas = _axes(records)
    grid = grid_values(records, run, metric)

    plt.rcParams["svg.hashsalt"] = "dre-bot"
    fig, ax = plt.subplots(figsize=(1.4 * len(lambdas) + 2, 1.2 * len(gammas) + 1.5))
    im = ax.imshow(np.ma.masked_invalid(grid), cmap="viridis", aspect="auto")
    ax.set_xticks(range(len(lambdas)), [format_param(v) for v in lambdas])
    ax.set_yticks(range(len(gammas)), [format_param(v) for v in gammas])
    ax.set_xlabel("lambda")
    ax.set_ylabel("gamma")
    ax.set_title(f"{title} (Run {run + 1})")
    for gi in range(len(gammas)):
        for li in range(len(lambdas)):
            value = grid[gi, li]
            if not np.isnan(value):
                v = int(value) if metric == "kd_difference" else float(value)
                ax.text(li, gi, fmt.format(v), ha="center", va="center", color="white", fontsize=8)
    fig.colorbar(im, ax=ax)
    fig.tight_layout()

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    logger.info(f"Wrote chart {path}")
    return path


def write_heatmaps(directory: Path, records: Sequence[RunRecord]) -> list[Path]:
    paths = []
    for run in sorted({r.run for r in records if r.gamma is not None and r.completed}):
        for metric in METRICS:
            name = f"{metric}_run{run + 1}.svg"
            paths.append(write_heatmap_svg(Path(directory) / name, records, run, metric))
    return paths
