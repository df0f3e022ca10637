"""
Config Module
Module ID: VDP-SETTINGS-000
Version: 0.1.0

Runtime settings.
"""

from src.config.settings import Settings, get_settings, reload_settings

__all__ = ["Settings", "get_settings", "reload_settings"]
