"""Tests for the text report tables and SVG heatmaps."""

import itertools

import numpy as np
import pytest

from app.harness.metrics import summarize
from app.harness.persistence import read_results_csv, write_results_csv
from app.harness.report import (
    averages_table,
    baseline_table,
    build_report,
    grid_table,
    grid_values,
    write_heatmap_svg,
    write_heatmaps,
)
from app.models.enums import Policy
from app.models.request import PARAMETER_GRID
from app.models.response import RunRecord

# Reference total-reward grid for one run: rows gamma 0.0..0.9, columns lambda 0.0..0.9.
PUBLISHED_RUN = [
    [448.83, 488.39, 419.72, 540.99],
    [440.82, 323.68, 195.56, 366.73],
    [485.05, 319.34, 164.35, 325.93],
    [361.74, 476.38, 407.21, 348.08],
]


def _rec(gamma, lam, total, run=0, kills=150, deaths=200, completed=True) -> RunRecord:
    return RunRecord(
        policy=Policy.LEARNING if gamma is not None else Policy.RANDOM,
        run=run,
        gamma=gamma,
        lam=lam,
        seed=0,
        total_reward=total,
        kills=kills,
        deaths=deaths,
        kd_difference=kills - deaths,
        avg_reward=total / deaths,
        completed=completed,
    )


@pytest.fixture
def published(tmp_path) -> list[RunRecord]:
    records = [
        _rec(gamma, lam, PUBLISHED_RUN[gi][li])
        for (gi, gamma), (li, lam) in itertools.product(enumerate(PARAMETER_GRID), repeat=2)
    ]
    return read_results_csv(write_results_csv(tmp_path / "results.csv", records))


class TestGridTables:
    def test_grid_values_layout(self, published):
        grid = grid_values(published, 0, "total_reward")
        assert grid.shape == (4, 4)
        assert grid[0, 3] == pytest.approx(540.99)
        assert grid[2, 2] == pytest.approx(164.35)

    def test_published_table(self, published):
        lines = grid_table(published, 0, "total_reward").splitlines()
        assert lines[0] == "Total Reward Received (Run 1)"
        assert lines[1].split() == ["gamma\\lambda", "0", "0.3", "0.6", "0.9"]
        assert lines[3].split() == ["0", "448.83", "488.39", "419.72", "540.99"]
        assert lines[5].split()[3] == "164.35"

    def test_published_mean(self, published):
        (run,) = summarize(published, Policy.LEARNING).run_means
        assert run.total_reward == pytest.approx(382.05)
        assert "382.05" in averages_table([run])

    def test_kd_table_uses_integers(self, published):
        lines = grid_table(published, 0, "kd_difference").splitlines()
        assert lines[0] == "Final Kill-Death Difference (Run 1)"
        assert lines[3].split()[1:] == ["-50"] * 4

    def test_missing_cell(self):
        records = [_rec(0.0, 0.0, 1.0), _rec(0.0, 0.3, 2.0), _rec(0.3, 0.0, 3.0)]
        lines = grid_table(records, 0, "total_reward").splitlines()
        assert lines[4].split() == ["0.3", "3.00", "n/a"]
        assert np.isnan(grid_values(records, 0, "total_reward")[1, 1])


class TestBuildReport:
    def test_learning_sections(self, published):
        report = build_report(learning=published)
        assert "Total Reward Received (Run 1)" in report
        assert "Final Kill-Death Difference (Run 1)" in report
        assert "Rank correlation (Spearman)" in report
        assert "Run 1" in report.split("Run Averages")[1]
        assert "Random Action Games" not in report

    def test_baseline_only(self):
        baseline = [_rec(None, None, -20.0, run=g, kills=5) for g in range(2)]
        report = build_report(baseline=baseline)
        assert "Random Action Games" in report
        assert "Game 2" in report
        assert "Baseline" in report
        assert "Learning vs random actions" not in report

    def test_comparison(self, published):
        baseline = [_rec(None, None, -20.0, run=g, kills=5) for g in range(3)]
        report = build_report(learning=published, baseline=baseline)
        assert "Learning vs random actions" in report
        assert "verdict: learning superior" in report

    def test_incomplete_games_listed(self):
        records = [_rec(0.0, 0.0, 1.0), _rec(0.0, 0.3, 2.0, completed=False)]
        assert "Incomplete games: g0_l0.3_r0" in build_report(learning=records)

    def test_baseline_table_skips_incomplete(self):
        records = [_rec(None, None, 4.0, run=0), _rec(None, None, 4.0, run=1, completed=False)]
        assert "Game 2" not in baseline_table(records)


class TestHeatmaps:
    def test_svg_written(self, published, tmp_path):
        path = write_heatmap_svg(tmp_path / "h.svg", published, 0, "total_reward")
        text = path.read_text()
        assert text.lstrip().startswith("<?xml")
        assert "<svg" in text

    def test_svg_is_reproducible(self, published, tmp_path):
        a = write_heatmap_svg(tmp_path / "a.svg", published, 0, "kd_difference")
        b = write_heatmap_svg(tmp_path / "b.svg", published, 0, "kd_difference")
        assert a.read_bytes() == b.read_bytes()

    def test_one_chart_per_run_and_metric(self, published, tmp_path):
        second = [r.model_copy(update={"run": 1}) for r in published]
        paths = write_heatmaps(tmp_path, published + second)
        assert sorted(p.name for p in paths) == [
            "kd_difference_run1.svg",
            "kd_difference_run2.svg",
            "total_reward_run1.svg",
            "total_reward_run2.svg",
        ]
