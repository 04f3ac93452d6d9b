"""Core configuration, errors and logging."""

from reptype.core.config import get_settings, settings

__all__ = ["settings", "get_settings"]
