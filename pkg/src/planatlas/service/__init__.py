"""HTTP/JSON service wrapping the core pipeline."""

from .app import ServerSettings, create_app
from .sessions import Session, SessionNotFound, SessionStore

__all__ = ["ServerSettings", "Session", "SessionNotFound", "SessionStore", "create_app"]
