import logging
import math
from collections import defaultdict
from collections.abc import Sequence

import numpy as np
from scipy.stats import spearmanr

from ..models.enums import Policy, Verdict
from ..models.response import (
    ComparisonSummary,
    MetricComparison,
    RunMeans,
    RunRecord,
    SweepReport,
)
from .persistence import ResultsError

logger = logging.getLogger(__name__)


def mean_std(values: Sequence[float]) -> tuple[float, float]:
    """Arithmetic mean and sample standard deviation (0 for fewer than two values)."""
    if not values:
        return 0.0, 0.0
    arr = np.asarray(values, dtype=np.float64)
    std = float(arr.std(ddof=1)) if len(arr) > 1 else 0.0
    return float(arr.mean()), std


def run_means(label: str, records: Sequence[RunRecord]) -> RunMeans:
    total_mean, total_std = mean_std([r.total_reward for r in records])
    kd_mean, kd_std = mean_std([float(r.kd_difference) for r in records])
    avg_mean, _ = mean_std([r.avg_reward for r in records])
    return RunMeans(
        label=label,
        games=len(records),
        avg_reward=avg_mean,
        total_reward=total_mean,
        kd_difference=kd_mean,
        total_reward_std=total_std,
        kd_difference_std=kd_std,
    )


def summarize(records: Sequence[RunRecord], policy: Policy) -> SweepReport:
    """Per-run means over completed games; failed games are listed, not averaged."""
    done = [r for r in records if r.completed]
    incomplete = [r.key for r in records if not r.completed]
    if incomplete:
        logger.warning(f"{len(incomplete)} incomplete game(s): {', '.join(incomplete)}")

    if policy == Policy.RANDOM:
        per_run = [run_means("Baseline", done)] if done else []
    else:
        by_run: dict[int, list[RunRecord]] = defaultdict(list)
        for r in done:
            by_run[r.run].append(r)
        per_run = [run_means(f"Run {run + 1}", by_run[run]) for run in sorted(by_run)]

    return SweepReport(
        policy=policy,
        records=list(records),
        run_means=per_run,
        overall=run_means("All", done) if done else None,
        incomplete=incomplete,
    )


def _verdict(difference: float) -> Verdict:
    if difference > 0:
        return Verdict.LEARNING_SUPERIOR
    if difference < 0:
        return Verdict.BASELINE_SUPERIOR
    return Verdict.INDISTINGUISHABLE


def _compare_metric(metric: str, learning: list[float], baseline: list[float]) -> MetricComparison:
    l_mean, l_std = mean_std(learning)
    b_mean, b_std = mean_std(baseline)
    difference = l_mean - b_mean
    return MetricComparison(
        metric=metric,
        learning_mean=l_mean,
        learning_std=l_std,
        baseline_mean=b_mean,
        baseline_std=b_std,
        difference=difference,
        verdict=_verdict(difference),
    )


def compare(learning: SweepReport, baseline: SweepReport) -> ComparisonSummary:
    lrn = [r for r in learning.records if r.completed]
    base = [r for r in baseline.records if r.completed]
    if not lrn or not base:
        raise ResultsError("cannot compare empty results", error_code="results.empty")

    total = _compare_metric(
        "total_reward", [r.total_reward for r in lrn], [r.total_reward for r in base]
    )
    kd = _compare_metric(
        "kd_difference",
        [float(r.kd_difference) for r in lrn],
        [float(r.kd_difference) for r in base],
    )
    verdicts = {total.verdict, kd.verdict}
    verdict = verdicts.pop() if len(verdicts) == 1 else Verdict.MIXED
    return ComparisonSummary(total_reward=total, kd_difference=kd, verdict=verdict)


def rank_correlation(records: Sequence[RunRecord], parameter: str) -> float | None:
    """
    Spearman correlation of total reward against "gamma" or "lambda".

    None when it is undefined (fewer than two games or a constant column).
    """
    attr = "lam" if parameter == "lambda" else parameter
    pairs = [
        (getattr(r, attr), r.total_reward)
        for r in records
        if r.completed and getattr(r, attr) is not None
    ]
    if len(pairs) < 2:
        return None
    xs, ys = zip(*pairs)
    if len(set(xs)) < 2 or len(set(ys)) < 2:
        return None
    rho = spearmanr(xs, ys).statistic
    return None if math.isnan(rho) else float(rho)
