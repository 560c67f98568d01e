"""
FrogLab
Configuration Loader v0.3.0
20260923

Load experiment files with environment variable overrides.

Experiment files are UTF-8 text with `[section]` headers, `key = value`
lines and `#` comments (whole-line or inline).
"""

import configparser
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

from dotenv import load_dotenv

from froglab.exceptions import ConfigError

# Load environment variables
load_dotenv()

ENV_WORKERS = "FROGLAB_WORKERS"
ENV_HORIZON_CAP = "FROGLAB_HORIZON_CAP"
ENV_LOG_LEVEL = "FROGLAB_LOG_LEVEL"


class ConfigLoader:
    """Load and query one experiment configuration file"""

    def __init__(self, path: Optional[Union[str, Path]] = None):
        """
        Initialize configuration loader

        Args:
            path: Experiment file; nothing is read until load() is called
        """
        self.path = Path(path) if path is not None else None
        self._parser = self._new_parser()
        self._loaded = False

    @staticmethod
    def _new_parser() -> configparser.ConfigParser:
        parser = configparser.ConfigParser(
            inline_comment_prefixes=("#",),
            comment_prefixes=("#",),
            interpolation=None,
        )
        parser.optionxform = str.lower
        return parser

    def load(self, path: Optional[Union[str, Path]] = None) -> Dict[str, Dict[str, str]]:
        """
        Read the experiment file

        Args:
            path: File to read (defaults to the path given at construction)

        Returns:
            Raw values keyed by section then key

        Raises:
            ConfigError: If the file is missing or cannot be parsed
        """
        if path is not None:
            self.path = Path(path)
        if self.path is None:
            raise ConfigError("No configuration file given")
        if not self.path.is_file():
            raise ConfigError(f"Configuration file not found: {self.path}")

        self._parser = self._new_parser()
        try:
            with open(self.path, "r", encoding="utf-8") as f:
                self._parser.read_file(f)
        except (configparser.Error, UnicodeDecodeError) as e:
            raise ConfigError(f"Invalid configuration in {self.path}: {e}") from e

        self._loaded = True
        return self.as_dict()

    def as_dict(self) -> Dict[str, Dict[str, str]]:
        return {section: dict(self._parser.items(section)) for section in self._parser.sections()}

    def sections(self):
        return self._parser.sections()

    def get(self, section: str, key: str, default: Any = None) -> Any:
        """
        Get configuration value

        Args:
            section: Section name (e.g. "experiment")
            key: Key inside the section
            default: Default value if section or key not found

        Returns:
            Raw string value or default
        """
        if not self._parser.has_section(section):
            return default
        return self._parser.get(section, key, fallback=default)

    def get_with_env_override(
        self,
        section: str,
        key: str,
        env_var: str,
        default: Any = None
    ) -> Any:
        """
        Get config value with environment variable override

        Priority: ENV VAR > Config File > Default
        """
        env_value = os.getenv(env_var)
        if env_value is not None and env_value.strip():
            return env_value

        config_value = self.get(section, key)
        if config_value is not None:
            return config_value

        return default

    def resolved(self) -> Dict[str, Dict[str, str]]:
        """Raw values with environment overrides applied"""
        values = self.as_dict()
        experiment = values.setdefault("experiment", {})
        workers = self.get_with_env_override("experiment", "workers", ENV_WORKERS)
        if workers is not None:
            experiment["workers"] = workers
        cap = self.get_with_env_override("experiment", "horizon_cap", ENV_HORIZON_CAP)
        if cap is not None:
            experiment["horizon_cap"] = cap
        return values


# Global config loader instance
_config_loader = None


def get_config(path: Optional[Union[str, Path]] = None) -> ConfigLoader:
    """
    Get global configuration loader instance

    Args:
        path: When given, (re)load this file into the global loader

    Returns:
        ConfigLoader instance
    """
    global _config_loader
    if _config_loader is None:
        _config_loader = ConfigLoader()
    if path is not None:
        _config_loader.load(path)
    return _config_loader
