"""Convenient access to numerical settings and constants."""

from .settings import (
    BettiConstants,
    Settings,
    settings,
    ConfigurationManager,
    get_settings,
    apply_settings,
)

__all__ = [
    "settings",
    "Settings",
    "BettiConstants",
    "ConfigurationManager",
    "get_settings",
    "apply_settings",
]
