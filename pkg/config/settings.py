import json
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from loguru import logger

from core.errors import UsageError

DEFAULTS: Dict[str, Any] = {
    "seed": 20140101,
    "random_cases": 10000,
    "bot_probability": 0.15,
    "boundary_first": True,
    "sample_bound": 9,
    "grid_bound": 12,
    "search_budget": 5000,
    "c0_nmax": 10,
    "fracpair_bound": 1000,
    "fracpair_cap_bits": 63,
    "log_level": "WARNING",
    "log_file": "",
}


class Settings:
    """
    Toolkit settings: built-in defaults, then the bundled settings.json,
    then an optional user file (JSON or YAML).
    """

    def __init__(self, config_path: Optional[Union[str, Path]] = None):
        self.values: Dict[str, Any] = dict(DEFAULTS)
        bundled = os.path.join(os.path.dirname(__file__), "settings.json")
        if os.path.exists(bundled):
            self._merge(self._load(bundled), bundled)
        if config_path:
            if not os.path.exists(config_path):
                raise UsageError(f"Config file {config_path} not found")
            self._merge(self._load(config_path), str(config_path))

    @staticmethod
    def _load(path: Union[str, Path]) -> Dict[str, Any]:
        with open(path, "r") as f:
            if str(path).lower().endswith((".yaml", ".yml")):
                data = yaml.safe_load(f) or {}
            else:
                data = json.load(f)
        if not isinstance(data, dict):
            raise UsageError(f"Config file {path} must hold a mapping")
        return data

    def _merge(self, data: Dict[str, Any], source: str) -> None:
        for key, value in data.items():
            if key not in DEFAULTS:
                raise UsageError(f"Unknown setting '{key}' in {source}. Known settings: {', '.join(DEFAULTS)}")
            self.values[key] = self._coerce(key, value, source)
        logger.debug("Loaded {} settings from {}", len(data), source)

    @staticmethod
    def _coerce(key: str, value: Any, source: str) -> Any:
        expected = type(DEFAULTS[key])
        if expected is float and isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        if type(value) is not expected:
            raise UsageError(f"Setting '{key}' in {source} must be {expected.__name__}, got {value!r}")
        if key == "bot_probability" and not 0.0 <= value <= 1.0:
            raise UsageError(f"Setting 'bot_probability' must lie in [0, 1], got {value}")
        if expected is int and key != "seed" and value < 0:
            raise UsageError(f"Setting '{key}' must not be negative, got {value}")
        return value

    def __getitem__(self, key: str) -> Any:
        return self.values[key]

    def override(self, **changes: Any) -> "Settings":
        """A copy with some values replaced; None values are ignored."""
        copy = Settings.__new__(Settings)
        copy.values = dict(self.values)
        copy._merge({k: v for k, v in changes.items() if v is not None}, "overrides")
        return copy

    def as_dict(self) -> Dict[str, Any]:
        return dict(self.values)
