"""Configuration module for certiq."""

from .settings import Settings, get_settings, clear_settings_cache
from .loader import (
    ConfigLoader, get_config_loader, load_user_config, merge_sections
)

__all__ = [
    "Settings",
    "get_settings",
    "clear_settings_cache",
    "ConfigLoader",
    "get_config_loader",
    "load_user_config",
    "merge_sections",
]
