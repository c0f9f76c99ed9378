import json
import logging
import os
from pathlib import Path
from typing import Dict, Any, Optional

logger = logging.getLogger(__name__)

SETTINGS_ENV = "GIE_SETTINGS"


class Settings:
    def __init__(self, settings_file: Optional[Path] = None):
        if settings_file is None:
            env_path = os.environ.get(SETTINGS_ENV)
            settings_file = Path(env_path) if env_path else Path.home() / ".gie_toolkit" / "settings.json"
        self.settings_file = Path(settings_file)
        self._settings: Dict[str, Any] = {}
        self.load_settings()

    def load_settings(self):
        """Load settings from file, falling back to defaults. Never creates the file."""
        self._settings = self.get_default_settings()
        try:
            if self.settings_file.exists():
                with open(self.settings_file, 'r', encoding='utf-8') as f:
                    stored = json.load(f)
                for key, value in stored.items():
                    if isinstance(value, dict) and isinstance(self._settings.get(key), dict):
                        self._settings[key].update(value)
                    else:
                        self._settings[key] = value
                logger.info(f"Loaded settings from {self.settings_file}")
        except Exception as e:
            logger.error(f"Failed to load settings: {e}")
            self._settings = self.get_default_settings()

    def save_settings(self):
        """Save settings to file."""
        try:
            self.settings_file.parent.mkdir(parents=True, exist_ok=True)
            with open(self.settings_file, 'w', encoding='utf-8') as f:
                json.dump(self._settings, f, indent=2)
            logger.info(f"Saved settings to {self.settings_file}")
        except Exception as e:
            logger.error(f"Failed to save settings: {e}")

    def get_default_settings(self) -> Dict[str, Any]:
        """Get default settings."""
        return {
            "tolerances": {
                "glems": 1e-9,
                "physical": 1e-12,
                "case": 1e-9,
            },
            "grid": {
                "n_theta": 6,
                "n_r": 5,
                "n_phi": 8,
                "n_tau": 5,
                "n_t": 9,
                "r_max": 8.0,
                "tau_max": 20.0,
                "refinement_rounds": 3,
            },
            "scan": {
                "max_workers": 4,
                "parallel_threshold": 10,
            },
            "logging": {
                "level": "warning",
            },
        }

    def get(self, key: str, default=None) -> Any:
        """Get a setting value; dotted keys reach into sections ("scan.max_workers")."""
        node: Any = self._settings
        for part in key.split("."):
            if not isinstance(node, dict) or part not in node:
                return default
            node = node[part]
        return node

    def set(self, key: str, value: Any):
        """Set a setting value."""
        parts = key.split(".")
        node = self._settings
        for part in parts[:-1]:
            node = node.setdefault(part, {})
        node[parts[-1]] = value


# Global settings instance
settings = Settings()
