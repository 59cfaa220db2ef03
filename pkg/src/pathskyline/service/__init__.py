"""HTTP service wrapping the core package (FastAPI + pydantic models)."""

from .app import app

__all__ = ["app"]
