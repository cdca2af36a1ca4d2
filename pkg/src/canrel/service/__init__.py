"""HTTP facade: pydantic request/response models wrapping the core engines."""
from .app import app, create_app

__all__ = ["app", "create_app"]
