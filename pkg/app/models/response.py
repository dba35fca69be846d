import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..utils.helpers import format_param
from .enums import Mode, Policy, Verdict


class RunRecord(BaseModel):
    """Outcome of one game."""

    model_config = ConfigDict(populate_by_name=True)

    policy: Policy = Field(Policy.LEARNING)
    run: int = Field(..., ge=0, description="Run index (game index for baselines)")
    gamma: float | None = Field(None, description="Discount, None for random-action games")
    lam: float | None = Field(None, alias="lambda", description="Trace decay, None for random-action games")
    seed: int
    total_reward: float = Field(0.0, allow_inf_nan=False)
    total_points: int = Field(0, description="Exact total in reward points")
    kills: int = Field(0, ge=0)
    deaths: int = Field(0, ge=0)
    kd_difference: int = 0
    avg_reward: float = Field(0.0, allow_inf_nan=False, description="total_reward / deaths")
    life_rewards: list[float] = Field(default_factory=list)
    mode_steps: dict[Mode, int] = Field(default_factory=dict)
    ticks: int = Field(0, ge=0)
    completed: bool = True
    error: str | None = None
    events_digest: str | None = None

    @model_validator(mode="after")
    def _consistent(self) -> "RunRecord":
        if self.kd_difference != self.kills - self.deaths:
            raise ValueError("kd_difference must equal kills - deaths")
        if self.deaths and not math.isclose(
            self.avg_reward, self.total_reward / self.deaths, rel_tol=0.0, abs_tol=1e-9
        ):
            raise ValueError("avg_reward must equal total_reward / deaths")
        return self

    @property
    def key(self) -> str:
        """File-name friendly identity of the game within its sweep."""
        if self.gamma is None or self.lam is None:
            return f"baseline_g{self.run}"
        return f"g{format_param(self.gamma)}_l{format_param(self.lam)}_r{self.run}"


class RunMeans(BaseModel):
    """Per-run (or per-baseline) aggregate of the game records."""

    label: str
    games: int = Field(..., ge=0)
    avg_reward: float
    total_reward: float
    kd_difference: float
    total_reward_std: float = 0.0
    kd_difference_std: float = 0.0


class SweepReport(BaseModel):
    policy: Policy = Field(Policy.LEARNING)
    records: list[RunRecord] = Field(default_factory=list)
    run_means: list[RunMeans] = Field(default_factory=list)
    overall: RunMeans | None = None
    incomplete: list[str] = Field(default_factory=list, description="Keys of games that failed")

    @property
    def complete(self) -> bool:
        return not self.incomplete


class MetricComparison(BaseModel):
    metric: str
    learning_mean: float
    learning_std: float
    baseline_mean: float
    baseline_std: float
    difference: float
    verdict: Verdict


class ComparisonSummary(BaseModel):
    total_reward: MetricComparison
    kd_difference: MetricComparison
    verdict: Verdict


class EncodeResponse(BaseModel):
    """Response model for the /encode endpoint."""

    mode: Mode
    state: int
    state_name: str
    states: dict[Mode, int | None] = Field(
        ..., description="State index under each encoder, None when undefined"
    )
    legal_actions: list[str]


class ErrorResponse(BaseModel):
    """Error response model."""

    success: bool = Field(False)
    error: str = Field(..., description="Error message")
    error_code: str | None = Field(None, description="Machine-readable error code")
