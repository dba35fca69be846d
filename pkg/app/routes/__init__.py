"""API route definitions."""

from .api import router

__all__ = ["router"]
