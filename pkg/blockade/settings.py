"""Layered configuration for blockade.

Built-in defaults are overridden by the user settings file, which is
overridden by environment variables. The settings file lives in an
OS-appropriate config directory and is plain JSON.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import platformdirs

from .constants import BlockadeConstants
from .errors import SettingsError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Settings:
    """Effective settings after all layers are applied."""
    cache_limit: int = BlockadeConstants.DEFAULT_CACHE_LIMIT
    workers: int = BlockadeConstants.DEFAULT_WORKERS
    pretty: bool = False
    chain_bound: int = BlockadeConstants.DEFAULT_CHAIN_BOUND

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def validate_setting(key: str, value: Any) -> bool:
    """Validate a single setting value.

    Args:
        key: Setting key name.
        value: Setting value to validate.

    Returns:
        True if the value is acceptable for the key. Unknown keys are
        accepted for forward compatibility.
    """
    if key == "cache_limit":
        return _is_int(value) and 0 <= value <= BlockadeConstants.MAX_CACHE_LIMIT
    if key == "workers":
        return _is_int(value) and 1 <= value <= BlockadeConstants.MAX_WORKERS
    if key == "chain_bound":
        return _is_int(value) and 1 <= value <= BlockadeConstants.MAX_CHAIN_BOUND
    if key == "pretty":
        return isinstance(value, bool)
    return True


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


class SettingsStore:
    """Reads and writes the user settings file."""

    def __init__(self, config_dir: Optional[Path] = None):
        if config_dir is None:
            override = os.environ.get(BlockadeConstants.CONFIG_DIR_ENV)
            if override:
                config_dir = Path(override)
            else:
                config_dir = Path(platformdirs.user_config_dir(
                    BlockadeConstants.APP_NAME, BlockadeConstants.APP_AUTHOR))
        self._config_dir = config_dir
        self._settings_file = config_dir / BlockadeConstants.SETTINGS_FILENAME

    @property
    def settings_file(self) -> Path:
        return self._settings_file

    def load(self) -> Dict[str, Any]:
        """Load the raw settings dict; empty on any problem."""
        if not self._settings_file.exists():
            return {}
        try:
            with open(self._settings_file, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (json.JSONDecodeError, OSError) as e:
            logger.warning(f"Could not load settings from {self._settings_file}: {e}")
            return {}
        if not isinstance(data, dict):
            logger.warning("Settings file has invalid format (not a dict), ignoring")
            return {}
        return data

    def save(self, values: Dict[str, Any]) -> bool:
        """Write settings atomically (temp file + rename).

        Returns:
            True if the save succeeded.
        """
        temp_file = self._settings_file.with_suffix(".tmp")
        try:
            self._config_dir.mkdir(parents=True, exist_ok=True)
            with open(temp_file, "w", encoding="utf-8") as f:
                json.dump(values, f, indent=2, sort_keys=True)
            temp_file.replace(self._settings_file)
            return True
        except OSError as e:
            logger.warning(f"Could not save settings to {self._settings_file}: {e}")
            try:
                if temp_file.exists():
                    temp_file.unlink()
            except OSError:
                pass
            return False


def load_settings(store: Optional[SettingsStore] = None) -> Settings:
    """Resolve defaults, the settings file and the environment into Settings."""
    store = store or SettingsStore()
    values = Settings().to_dict()

    for key, value in store.load().items():
        if key not in values:
            continue
        if validate_setting(key, value):
            values[key] = value
        else:
            logger.warning(f"Ignoring invalid setting {key}={value!r} in {store.settings_file}")

    raw_limit = os.environ.get(BlockadeConstants.CACHE_LIMIT_ENV)
    if raw_limit is not None:
        try:
            limit = int(raw_limit)
        except ValueError:
            limit = None
        if limit is not None and validate_setting("cache_limit", limit):
            values["cache_limit"] = limit
        else:
            logger.warning(
                f"Ignoring {BlockadeConstants.CACHE_LIMIT_ENV}={raw_limit!r}: "
                f"expected an integer in 0..{BlockadeConstants.MAX_CACHE_LIMIT}"
            )

    return Settings(**values)


def update_settings(updates: Mapping[str, Any], store: Optional[SettingsStore] = None) -> Settings:
    """Validate ``updates``, merge them into the settings file and reload.

    Keys already in the file but not in ``updates`` are kept as they are.

    Raises:
        SettingsError: for an unknown key, an invalid value or a failed save.
    """
    store = store or SettingsStore()
    known = Settings().to_dict()
    values = store.load()
    for key, value in updates.items():
        if key not in known:
            raise SettingsError(f"Unknown setting {key!r}; known: {', '.join(sorted(known))}")
        if not validate_setting(key, value):
            raise SettingsError(f"Invalid value {value!r} for setting {key!r}")
        values[key] = value
    if not store.save(values):
        raise SettingsError("Could not save settings", path=str(store.settings_file))
    logger.info(f"Updated {', '.join(sorted(updates))} in {store.settings_file}")
    reset_settings()
    return load_settings(store)


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Process-wide settings, resolved on first use."""
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def reset_settings() -> None:
    """Forget the resolved settings so the next call re-reads all layers."""
    global _settings
    _settings = None
