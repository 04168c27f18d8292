"""HTTP facade: FastAPI app factory, config, and server helpers."""

from .app import API_PREFIX, ApiException, BackgroundServer, create_app, serve
from .config import ServiceConfig

__all__ = [
    "API_PREFIX",
    "ApiException",
    "BackgroundServer",
    "ServiceConfig",
    "create_app",
    "serve",
]
