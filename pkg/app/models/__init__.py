"""
Shared enums and result records.

Request and config models live in `app.models.request`; they depend on the
arena and DRE packages, which themselves import the enums from here.
"""

from .enums import (
    Distance,
    FireMode,
    LevelsCode,
    Mode,
    Movement,
    OpponentStrategy,
    PickupKind,
    Policy,
    Verdict,
)
from .response import (
    ComparisonSummary,
    EncodeResponse,
    ErrorResponse,
    MetricComparison,
    RunMeans,
    RunRecord,
    SweepReport,
)

__all__ = [
    "ComparisonSummary",
    "Distance",
    "EncodeResponse",
    "ErrorResponse",
    "FireMode",
    "LevelsCode",
    "MetricComparison",
    "Mode",
    "Movement",
    "OpponentStrategy",
    "PickupKind",
    "Policy",
    "RunMeans",
    "RunRecord",
    "SweepReport",
    "Verdict",
]
