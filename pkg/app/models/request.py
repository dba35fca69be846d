import logging
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..arena.config import ArenaConfig
from ..config import ConfigError, get_settings, load_key_value_file
from ..dre.perception import Perception
from ..learning.sarsa import LearnerParams
from ..utils.helpers import parse_float_list
from .enums import OpponentStrategy, Policy

logger = logging.getLogger(__name__)

PARAMETER_GRID: tuple[float, ...] = (0.0, 0.3, 0.6, 0.9)
DEFAULT_SEED = 0
ARENA_PREFIX = "arena."


def _unit_interval_list(value) -> list[float]:
    values = parse_float_list(value) if isinstance(value, (str, list, tuple)) else value
    for v in values:
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"parameter {v} outside [0, 1]")
    return values


class ExperimentConfig(BaseModel):
    """Everything one sweep or baseline needs besides the output location."""

    model_config = ConfigDict(extra="forbid")

    gammas: list[float] = Field(
        default_factory=lambda: list(PARAMETER_GRID), min_length=1, description="Discount grid"
    )
    lambdas: list[float] = Field(
        default_factory=lambda: list(PARAMETER_GRID), min_length=1, description="Trace-decay grid"
    )
    alpha: float = Field(0.2, gt=0.0, le=1.0, allow_inf_nan=False)
    epsilon: float = Field(0.2, ge=0.0, le=1.0, allow_inf_nan=False)
    deaths_per_game: int = Field(200, gt=0, description="A game ends at this many DRE-Bot deaths")
    runs: int = Field(2, ge=1)
    opponents: list[OpponentStrategy] = Field(
        default_factory=lambda: [OpponentStrategy.PATROLLER, OpponentStrategy.HUNTER],
        min_length=1,
    )
    base_seed: int | None = Field(None, description="Falls back to DRE_SEED, then 0")
    arena_config: str | None = Field(None, description="Path of a key = value arena config")
    arena: ArenaConfig = Field(default_factory=ArenaConfig)
    baseline_games: int = Field(5, ge=1)
    max_ticks: int = Field(500_000, gt=0, description="Safety stop for a single game")
    danger_priority: bool = Field(False, description="Rank Danger above Replenish")

    @field_validator("gammas", "lambdas", mode="before")
    @classmethod
    def _parse_grid(cls, value):
        return _unit_interval_list(value)

    @field_validator("opponents", mode="before")
    @classmethod
    def _parse_opponents(cls, value):
        if isinstance(value, str):
            return [part.strip() for part in value.split(",") if part.strip()]
        return value

    @model_validator(mode="before")
    @classmethod
    def _load_arena_file(cls, data):
        if isinstance(data, dict) and data.get("arena_config") and data.get("arena") is None:
            return {**data, "arena": ArenaConfig.from_file(data["arena_config"])}
        return data

    @property
    def seed(self) -> int:
        if self.base_seed is not None:
            return self.base_seed
        env_seed = get_settings().seed
        return env_seed if env_seed is not None else DEFAULT_SEED

    @property
    def grid_size(self) -> int:
        return len(self.gammas) * len(self.lambdas)

    def learner_params(self, gamma: float, lam: float) -> LearnerParams:
        return LearnerParams(alpha=self.alpha, gamma=gamma, lam=lam, epsilon=self.epsilon)

    @classmethod
    def from_mapping(cls, values: dict[str, str]) -> "ExperimentConfig":
        """
        Build from flat string values. `arena.*` keys override the arena config,
        which itself may come from the `arena_config` file.
        """
        arena_values: dict[str, str] = {}
        own: dict[str, object] = {}
        for key, value in values.items():
            if key.startswith(ARENA_PREFIX):
                arena_values[key[len(ARENA_PREFIX) :]] = value
            elif key in cls.model_fields and key != "arena":
                own[key] = None if value.lower() in ("", "none") else value
            else:
                raise ConfigError(f"unknown config key: {key}", error_code="config.unknown_key")

        if own.get("arena_config"):
            arena_values = {**load_key_value_file(own["arena_config"]), **arena_values}
        own["arena"] = ArenaConfig.from_mapping(arena_values)
        try:
            return cls.model_validate(own)
        except ValidationError as e:
            raise ConfigError(f"invalid experiment config: {e}", error_code="config.bad_value")

    @classmethod
    def from_file(cls, path: str | Path) -> "ExperimentConfig":
        values = load_key_value_file(path)
        logger.info(f"Loaded experiment config from {path} ({len(values)} keys)")
        return cls.from_mapping(values)


class PlayRequest(BaseModel):
    """Request model for the /play endpoint."""

    model_config = ConfigDict(populate_by_name=True)

    gamma: float = Field(0.9, ge=0.0, le=1.0, allow_inf_nan=False)
    lam: float = Field(0.0, ge=0.0, le=1.0, allow_inf_nan=False, alias="lambda")
    seed: int = Field(DEFAULT_SEED, description="Game seed")
    policy: Policy = Field(Policy.LEARNING)
    deaths_per_game: int = Field(20, gt=0, le=1000, description="Kept small for interactive use")
    alpha: float = Field(0.2, gt=0.0, le=1.0, allow_inf_nan=False)
    epsilon: float = Field(0.2, ge=0.0, le=1.0, allow_inf_nan=False)
    danger_priority: bool = False

    def to_experiment(self) -> ExperimentConfig:
        return ExperimentConfig(
            gammas=[self.gamma],
            lambdas=[self.lam],
            alpha=self.alpha,
            epsilon=self.epsilon,
            deaths_per_game=self.deaths_per_game,
            runs=1,
            base_seed=self.seed,
            danger_priority=self.danger_priority,
        )


class BaselineRequest(BaseModel):
    """Request model for the /baseline endpoint."""

    games: int = Field(1, ge=1, le=10)
    seed: int = Field(DEFAULT_SEED)
    deaths_per_game: int = Field(20, gt=0, le=1000)

    def to_experiment(self) -> ExperimentConfig:
        return ExperimentConfig(
            deaths_per_game=self.deaths_per_game,
            base_seed=self.seed,
            baseline_games=self.games,
        )


class EncodeRequest(BaseModel):
    """Request model for the /encode endpoint."""

    perception: Perception
    danger_priority: bool = False
