"""Tests for results CSV, per-life and event JSONL files and Q-table dumps."""

import json

import numpy as np
import pytest

from app.arena import ArenaConfig, ArenaState
from app.harness.persistence import (
    RESULTS_COLUMNS,
    ResultsError,
    read_results_csv,
    write_events_jsonl,
    write_lives_jsonl,
    write_qtable_dumps,
    write_results_csv,
)
from app.learning.qtable_io import read_qtable_csv
from app.models.enums import Mode, Policy
from app.models.response import RunRecord

HEADER = ",".join(RESULTS_COLUMNS)


def _rec(gamma, lam, run=0, total=12.5, kills=7, deaths=5, lives=None) -> RunRecord:
    return RunRecord(
        policy=Policy.LEARNING if gamma is not None else Policy.RANDOM,
        run=run,
        gamma=gamma,
        lam=lam,
        seed=99,
        total_reward=total,
        kills=kills,
        deaths=deaths,
        kd_difference=kills - deaths,
        avg_reward=total / deaths,
        life_rewards=lives or [],
    )


class TestResultsCsv:
    def test_write_format(self, tmp_path):
        path = write_results_csv(tmp_path / "results.csv", [_rec(0.3, 0.9, total=1.0 / 3)])
        lines = path.read_text().splitlines()
        assert lines[0] == HEADER
        assert lines[1].startswith("0,0.3,0.9,99,0.33333,7,5,2,")

    def test_baseline_rows_leave_parameters_blank(self, tmp_path):
        path = write_results_csv(tmp_path / "b.csv", [_rec(None, None, run=2)])
        assert path.read_text().splitlines()[1].startswith("2,,,99,")
        (record,) = read_results_csv(path)
        assert record.policy == Policy.RANDOM
        assert record.key == "baseline_g2"

    def test_read_back(self, tmp_path):
        records = [_rec(0.0, 0.0), _rec(0.9, 0.6, run=1, total=-3.25, kills=1, deaths=4)]
        back = read_results_csv(write_results_csv(tmp_path / "r.csv", records))
        assert [(r.gamma, r.lam, r.run, r.total_reward, r.kd_difference) for r in back] == [
            (0.0, 0.0, 0, 12.5, 2),
            (0.9, 0.6, 1, -3.25, -3),
        ]
        assert back[1].avg_reward == pytest.approx(-3.25 / 4)
        assert back[1].total_points == -325_000

    def test_rounded_average_is_recomputed(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text(HEADER + "\n0,0.0,0.3,1,10.00000,3,3,0,3.33\n")
        (record,) = read_results_csv(path)
        assert record.avg_reward == pytest.approx(10.0 / 3)

    def test_blank_lines_skipped(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text(HEADER + "\n\n0,0.0,0.3,1,4.0,1,2,-1,2.0\n\n")
        assert len(read_results_csv(path)) == 1

    def test_empty_file(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("")
        with pytest.raises(ResultsError) as exc:
            read_results_csv(path)
        assert exc.value.error_code == "results.empty"

    def test_header_only(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text(HEADER + "\n")
        with pytest.raises(ResultsError, match="no result rows"):
            read_results_csv(path)

    def test_missing_column(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("run,gamma,lambda\n0,0.0,0.0\n")
        with pytest.raises(ResultsError, match="missing columns") as exc:
            read_results_csv(path)
        assert exc.value.error_code == "results.malformed"

    def test_bad_rows_are_listed(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text(
            HEADER
            + "\n0,0.0,0.0,1,5.0,2,2,0,2.5"
            + "\n0,0.0,0.3,1,abc,2,2,0,1.0"
            + "\n0,0.3,0.0,1,5.0,2,2,4,2.5"
            + "\n0,0.3,,1,5.0,2,2,0,2.5"
            + "\n0,0.6,0.0,1,5.0\n"
        )
        with pytest.raises(ResultsError) as exc:
            read_results_csv(path)
        assert [row.split(":")[0] for row in exc.value.rows] == ["row 3", "row 4", "row 5", "row 6"]
        assert "kd_diff 4" in exc.value.rows[1]

    def test_extra_fields(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text(HEADER + "\n0,0.0,0.0,1,5.0,2,2,0,2.5,surplus\n")
        with pytest.raises(ResultsError, match="too many fields"):
            read_results_csv(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ResultsError):
            read_results_csv(tmp_path / "nope.csv")


class TestJsonl:
    def test_one_line_per_life(self, tmp_path):
        records = [_rec(0.0, 0.3, lives=[1.5, -2.0]), _rec(None, None, lives=[0.25])]
        path = write_lives_jsonl(tmp_path / "lives.jsonl", records)
        lines = [json.loads(line) for line in path.read_text().splitlines()]
        assert lines == [
            {"game": "g0_l0.3_r0", "life": 0, "reward": 1.5, "seed": 99},
            {"game": "g0_l0.3_r0", "life": 1, "reward": -2.0, "seed": 99},
            {"game": "baseline_g0", "life": 0, "reward": 0.25, "seed": 99},
        ]

    def test_events_jsonl(self, tmp_path):
        arena = ArenaState(ArenaConfig(), 1, ["bot", "opponent"])
        stream = [arena.step({}) for _ in range(3)]
        path = write_events_jsonl(tmp_path / "events.jsonl", stream)
        lines = [json.loads(line) for line in path.read_text().splitlines()]
        assert len(lines) == 6
        assert [(r["tick"], r["entity"]) for r in lines[:2]] == [(0, 0), (0, 1)]
        assert "heard_noise" in lines[0]


class TestQTableDumps:
    def test_one_file_per_mode(self, tmp_path):
        tables = {mode: np.zeros((2, 3)) for mode in Mode}
        tables[Mode.DANGER][1, 2] = 0.75
        paths = write_qtable_dumps(tmp_path / "qtables", "g0.9_l0_r1", tables)
        assert sorted(p.name for p in paths) == [
            "g0.9_l0_r1_Danger.csv",
            "g0.9_l0_r1_Explore.csv",
            "g0.9_l0_r1_Replenish.csv",
        ]
        danger = read_qtable_csv(tmp_path / "qtables" / "g0.9_l0_r1_Danger.csv")
        assert danger.values[1, 2] == 0.75
