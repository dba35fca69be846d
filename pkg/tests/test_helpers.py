"""Tests for utility helpers and seeded random streams."""

import hashlib

import pytest

from app.utils.helpers import (
    float_or_none,
    format_param,
    parse_float_list,
    parse_key_value_text,
    stable_hash,
)
from app.utils.rng import GameRNG, derive_seed


class TestFloatOrNone:
    @pytest.mark.parametrize(
        ("val", "expected"),
        [
            (3.14, 3.14),
            ("2.5", 2.5),
            (None, None),
            ("nope", None),
            ("inf", None),
            ("nan", None),
        ],
    )
    def test_values(self, val, expected):
        assert float_or_none(val) == expected


class TestParseFloatList:
    def test_comma_string(self):
        assert parse_float_list("0.0, 0.3,0.6 ,0.9") == [0.0, 0.3, 0.6, 0.9]

    def test_sequence(self):
        assert parse_float_list(["0.5", 1]) == [0.5, 1.0]

    @pytest.mark.parametrize("text", ["", "0.1,,0.2", "0.1,x"])
    def test_rejects_bad_items(self, text):
        with pytest.raises(ValueError):
            parse_float_list(text)


class TestFormatParam:
    @pytest.mark.parametrize(
        ("val", "expected"),
        [(0.0, "0"), (0.3, "0.3"), (0.9, "0.9"), (1.0, "1"), (-0.5, "m0.5")],
    )
    def test_values(self, val, expected):
        assert format_param(val) == expected


class TestParseKeyValueText:
    def test_comments_and_blanks(self):
        text = "# header\n\ngammas = 0.0, 0.9  # grid\nruns=3\n"
        assert parse_key_value_text(text) == {"gammas": "0.0, 0.9", "runs": "3"}

    def test_empty_value_kept(self):
        assert parse_key_value_text("base_seed =\n") == {"base_seed": ""}

    @pytest.mark.parametrize(
        ("text", "match"),
        [
            ("runs 3\n", "line 1: expected"),
            ("= 3\n", "missing key"),
            ("runs = 1\nruns = 2\n", "line 2: duplicate key"),
        ],
    )
    def test_errors(self, text, match):
        with pytest.raises(ValueError, match=match):
            parse_key_value_text(text)


class TestStableHash:
    def test_repeatable(self):
        assert stable_hash(1, "cell", 0, 2) == stable_hash(1, "cell", 0, 2)

    def test_parts_matter(self):
        assert stable_hash(1, "cell", 0, 2) != stable_hash(1, "cell", 2, 0)

    def test_non_negative_63_bit(self):
        for i in range(50):
            h = stable_hash(i)
            assert 0 <= h < 2**63

    def test_sha256_prefix(self):
        digest = hashlib.sha256("5\x1f'combat'".encode()).digest()
        assert stable_hash(5, "combat") == int.from_bytes(digest[:8], "big") & (2**63 - 1)


class TestGameRNG:
    def test_same_seed_same_stream(self):
        a, b = GameRNG(9), GameRNG(9)
        assert [a.random() for _ in range(5)] == [b.random() for _ in range(5)]

    def test_fork_is_independent_of_parent_draws(self):
        a, b = GameRNG(9), GameRNG(9)
        for _ in range(10):
            a.random()
        assert a.fork("combat").random() == b.fork("combat").random()

    def test_forks_differ_by_name(self):
        rng = GameRNG(9)
        assert rng.fork("combat").seed != rng.fork("bot").seed

    def test_derive_seed(self):
        assert derive_seed(3, "baseline", 1) == derive_seed(3, "baseline", 1)
        assert derive_seed(3, "baseline", 1) != derive_seed(4, "baseline", 1)

    def test_ranges(self):
        rng = GameRNG(0)
        assert all(0 <= rng.randrange(3) < 3 for _ in range(100))
        assert all(1 <= rng.randint(1, 3) <= 3 for _ in range(100))
        assert rng.choice(["only"]) == "only"
