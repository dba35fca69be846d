"""Tests for the HTTP service."""

import pytest
from fastapi.testclient import TestClient

from app.harness import game as game_module
from app.main import app


@pytest.fixture
def client():
    return TestClient(app)


class TestRoot:
    def test_root(self, client):
        body = client.get("/").json()
        assert body["name"] == "DRE-Bot Arena"
        assert body["endpoints"]["play"] == "/api/play"

    def test_health(self, client):
        body = client.get("/api/health").json()
        assert body["status"] == "healthy"
        assert body["modes"] == ["Danger", "Replenish", "Explore"]

    def test_defaults(self, client):
        body = client.get("/api/defaults").json()
        assert body["experiment"]["gammas"] == [0.0, 0.3, 0.6, 0.9]
        assert body["experiment"]["deaths_per_game"] == 200
        assert body["arena"]["max_health"] == 100
        assert len(body["actions"]["Replenish"]) == 7


# ── /play ────────────────────────────────────────────────────────────
class TestPlay:
    def test_learning_game(self, client):
        resp = client.post("/api/play", json={"gamma": 0.6, "lambda": 0.3, "seed": 4, "deaths_per_game": 2})
        assert resp.status_code == 200
        body = resp.json()
        assert body["deaths"] == 2
        assert body["completed"] is True
        assert body["gamma"] == 0.6
        assert body["kd_difference"] == body["kills"] - body["deaths"]

    def test_same_request_same_record(self, client):
        payload = {"gamma": 0.9, "lambda": 0.0, "seed": 8, "deaths_per_game": 2}
        assert client.post("/api/play", json=payload).json() == client.post("/api/play", json=payload).json()

    def test_random_policy_drops_parameters(self, client):
        body = client.post("/api/play", json={"policy": "random", "seed": 1, "deaths_per_game": 1}).json()
        assert body["policy"] == "random"
        assert body["gamma"] is None

    @pytest.mark.parametrize(
        "payload",
        [
            {"gamma": 1.5},
            {"lambda": -0.1},
            {"deaths_per_game": 0},
            {"policy": "greedy"},
        ],
    )
    def test_validation(self, client, payload):
        assert client.post("/api/play", json=payload).status_code == 422

    def test_aborted_game(self, client, monkeypatch):
        def boom(*args, **kwargs):
            raise RuntimeError("reward table corrupt")

        monkeypatch.setattr(game_module, "compute_reward", boom)
        resp = client.post("/api/play", json={"seed": 2, "deaths_per_game": 1})
        assert resp.status_code == 500
        detail = resp.json()["detail"]
        assert detail["error_code"] == "game.aborted"
        assert "reward table corrupt" in detail["error"]


class TestBaseline:
    def test_games_are_random(self, client):
        resp = client.post("/api/baseline", json={"games": 2, "seed": 3, "deaths_per_game": 1})
        assert resp.status_code == 200
        body = resp.json()
        assert body["policy"] == "random"
        assert [r["run"] for r in body["records"]] == [0, 1]
        assert body["incomplete"] == []

    def test_too_many_games(self, client):
        assert client.post("/api/baseline", json={"games": 11}).status_code == 422


# ── /encode ──────────────────────────────────────────────────────────
class TestEncode:
    def test_explore(self, client):
        body = client.post("/api/encode", json={"perception": {"movement": "run", "crouched": True}}).json()
        assert body["mode"] == "Explore"
        assert body["state"] == 3
        assert body["state_name"] == "Movement=run|Crouched=T"
        assert body["states"]["Replenish"] is None
        assert body["legal_actions"] == [
            "RunAround",
            "WalkAround",
            "TurnLeft",
            "TurnRight",
            "StopMovement",
            "Crouch",
        ]

    def test_danger(self, client):
        perception = {"being_hit": True, "see_enemy": True, "opponent_distance": "far"}
        body = client.post("/api/encode", json={"perception": perception}).json()
        assert body["mode"] == "Danger"
        assert body["state"] == 16 + 2
        assert "ShootPrimary" in body["legal_actions"]
        assert "LastSeenOpponent" not in body["legal_actions"]

    def test_replenish_wins_unless_danger_first(self, client):
        perception = {"see_enemy": True, "opponent_distance": "short", "health_pct": 15.0}
        body = client.post("/api/encode", json={"perception": perception}).json()
        assert body["mode"] == "Replenish"
        assert body["state"] == 32 + 4
        assert body["state_name"].endswith("Levels=CH")

        body = client.post(
            "/api/encode", json={"perception": perception, "danger_priority": True}
        ).json()
        assert body["mode"] == "Danger"
        assert body["state"] == 0

    def test_inconsistent_perception(self, client):
        resp = client.post("/api/encode", json={"perception": {"see_enemy": True}})
        assert resp.status_code == 422
