"""Domain-independent tabular Sarsa(lambda) and its test gridworld."""

from .qtable_io import describe_policy, read_qtable_csv, write_qtable_csv
from .sarsa import (
    LearnerError,
    LearnerParams,
    QTable,
    SarsaLearner,
    StepRecord,
    TraceTable,
)

__all__ = [
    "LearnerError",
    "LearnerParams",
    "QTable",
    "SarsaLearner",
    "StepRecord",
    "TraceTable",
    "describe_policy",
    "read_qtable_csv",
    "write_qtable_csv",
]
