from enum import Enum


class Mode(str, Enum):
    DANGER = "Danger"
    REPLENISH = "Replenish"
    EXPLORE = "Explore"


class Distance(str, Enum):
    """Opponent distance bucket; NO means no opponent is visible."""

    SHORT = "short"
    MEDIUM = "medium"
    FAR = "far"
    NO = "no"


class Movement(str, Enum):
    WALK = "walk"
    RUN = "run"
    STOP = "stop"


class LevelsCode(str, Enum):
    """Joint ammo/health level, listed in state-table order."""

    LA = "LA"
    LH = "LH"
    LA_LH = "LA&LH"
    CA = "CA"
    CH = "CH"
    CA_CH = "CA&CH"
    CA_LH = "CA&LH"
    LA_CH = "LA&CH"


class PickupKind(str, Enum):
    HEALTH = "health"
    AMMO = "ammo"
    ADRENALINE = "adrenaline"


class FireMode(str, Enum):
    PRIMARY = "primary"
    SECONDARY = "secondary"


class OpponentStrategy(str, Enum):
    PATROLLER = "patroller"
    HUNTER = "hunter"


class Policy(str, Enum):
    LEARNING = "learning"
    RANDOM = "random"


class Verdict(str, Enum):
    LEARNING_SUPERIOR = "learning superior"
    BASELINE_SUPERIOR = "baseline superior"
    INDISTINGUISHABLE = "indistinguishable"
    MIXED = "mixed"
