"""
API route definitions for the DRE-Bot experiment service.
"""

import logging

from fastapi import APIRouter, HTTPException

from ..arena.config import ArenaConfig
from ..config import get_settings
from ..dre.actions import ACTION_NAMES, ItemMemory, legal_actions
from ..dre.arbiter import select_mode
from ..dre.perception import STATE_NAMES, ModeError, encode_state
from ..harness.game import play_game
from ..harness.sweep import run_baseline
from ..models.enums import Mode, Policy
from ..models.request import BaselineRequest, EncodeRequest, ExperimentConfig, PlayRequest
from ..models.response import EncodeResponse, ErrorResponse, RunRecord, SweepReport

logger = logging.getLogger(__name__)

router = APIRouter()


def _internal_error(e: Exception) -> HTTPException:
    logger.exception(f"Unexpected error: {e}")
    # Do not leak exception details in production
    message = str(e) if get_settings().debug else "An internal error occurred. Please try again later."
    return HTTPException(
        status_code=500,
        detail={"success": False, "error": message, "error_code": "internal.error"},
    )


@router.post(
    "/play",
    response_model=RunRecord,
    responses={
        422: {"model": ErrorResponse, "description": "Validation error"},
        500: {"model": ErrorResponse, "description": "Game aborted"},
    },
    summary="Play one game",
    description="Plays a single DRE-Bot game against the scripted opponents and returns its record.",
)
def play(request: PlayRequest):
    cfg = request.to_experiment()
    learning = request.policy == Policy.LEARNING
    gamma, lam = (request.gamma, request.lam) if learning else (None, None)
    try:
        record = play_game(cfg, gamma, lam, request.seed, request.policy)
    except Exception as e:
        raise _internal_error(e)
    # Aborted games come back without an event digest.
    if not record.completed and record.events_digest is None:
        raise HTTPException(
            status_code=500,
            detail={"success": False, "error": record.error, "error_code": "game.aborted"},
        )
    return record


@router.post(
    "/baseline",
    response_model=SweepReport,
    responses={422: {"model": ErrorResponse, "description": "Validation error"}},
    summary="Play random-action games",
)
def baseline(request: BaselineRequest):
    cfg = request.to_experiment()
    try:
        return run_baseline(cfg, request.games, parallel=1)
    except Exception as e:
        raise _internal_error(e)


@router.post(
    "/encode",
    response_model=EncodeResponse,
    responses={400: {"model": ErrorResponse, "description": "Perception cannot be encoded"}},
    summary="Encode a perception",
    description="Returns the arbiter's mode, the state index under every encoder and the legal actions.",
)
def encode(request: EncodeRequest):
    p = request.perception
    try:
        mode = select_mode(p, request.danger_priority)
        state = encode_state(mode, p)
    except ModeError as e:
        raise HTTPException(
            status_code=400,
            detail={"success": False, "error": str(e), "error_code": e.error_code},
        )

    states: dict[Mode, int | None] = {}
    for m in Mode:
        try:
            states[m] = encode_state(m, p)
        except ModeError:
            states[m] = None
    legal = legal_actions(mode, p, ItemMemory())
    return EncodeResponse(
        mode=mode,
        state=state,
        state_name=STATE_NAMES[mode][state],
        states=states,
        legal_actions=[ACTION_NAMES[mode][a] for a in sorted(legal)],
    )


@router.get(
    "/defaults",
    summary="Default configuration",
    description="Default experiment and arena configuration (DRE_SEED applied to the seed).",
)
def defaults():
    cfg = ExperimentConfig()
    experiment = cfg.model_dump(mode="json", exclude={"arena"})
    experiment["base_seed"] = cfg.seed
    return {
        "experiment": experiment,
        "arena": ArenaConfig().model_dump(mode="json"),
        "actions": {mode.value: list(names) for mode, names in ACTION_NAMES.items()},
    }


@router.get(
    "/health",
    summary="Health check",
)
def health_check():
    settings = get_settings()
    return {
        "status": "healthy",
        "output_dir": settings.output_dir,
        "modes": [m.value for m in Mode],
    }
