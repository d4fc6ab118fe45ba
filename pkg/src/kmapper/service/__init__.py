"""HTTP service exposing the analysis pipeline.

Start with ``uvicorn kmapper.service:app``.
"""
from .app import app

__all__ = ["app"]
