"""Configuration loader for toric billiards runs"""

import logging
import os
from typing import Any, Callable, Dict, List, Optional, Tuple

import yaml

from .constants import (
    EnumerationDefaults,
    RenderDefaults,
    SievingDefaults,
    VerificationDefaults,
)
from .exceptions import ConfigurationError

logger = logging.getLogger(__name__)

# File picked up from the working directory when --config is not given
DEFAULT_CONFIG_FILE = "toric.yaml"

# Attribute name -> (dotted config path, default value, type converter)
# type_converter is optional - if None, returns value as-is
_CONFIG_SCHEMA: Dict[str, Tuple[str, Any, Optional[Callable]]] = {
    # Enumeration
    "max_n": ("enumeration.max_n", EnumerationDefaults.MAX_N, int),
    "threads": ("enumeration.threads", EnumerationDefaults.THREADS, int),
    "power_threshold": (
        "enumeration.power_threshold",
        EnumerationDefaults.POWER_THRESHOLD,
        int,
    ),
    # Verification suites
    "seed": ("verification.seed", VerificationDefaults.SEED, int),
    "samples": ("verification.samples", VerificationDefaults.SAMPLES, int),
    "lift_steps": (
        "verification.lift_steps",
        VerificationDefaults.LIFT_STEPS,
        int,
    ),
    "lemma_trees": (
        "verification.lemma_trees",
        VerificationDefaults.LEMMA_TREES,
        int,
    ),
    # Sieving
    "max_gamma_m": ("sieving.max_gamma_m", SievingDefaults.MAX_GAMMA_M, int),
    "root_tolerance": (
        "sieving.tolerance",
        SievingDefaults.ROOT_TOLERANCE,
        float,
    ),
    # Rendering
    "render_width": ("render.width", RenderDefaults.WIDTH, int),
    "render_height": ("render.height", RenderDefaults.HEIGHT, int),
    "strip_cap": ("render.strip_cap", RenderDefaults.STRIP_CAP, int),
    "show_labels": ("render.show_labels", RenderDefaults.SHOW_LABELS, bool),
    "color_reflect": (
        "render.colors.reflect",
        RenderDefaults.COLOR_REFLECT,
        str,
    ),
    "color_refract": (
        "render.colors.refract",
        RenderDefaults.COLOR_REFRACT,
        str,
    ),
    "color_window": ("render.colors.window", RenderDefaults.COLOR_WINDOW, str),
    # Logging
    "log_path": ("logging.path", "logs/toric-billiards.log", str),
    "log_level": ("logging.level", "WARNING", str),
    "log_file_output": ("logging.file_output", False, bool),
    "log_max_size_mb": ("logging.max_size_mb", 10, int),
    "log_backup_count": ("logging.backup_count", 3, int),
}


class Config:
    """Load and manage configuration from a YAML file"""

    def __init__(self, config_path: Optional[str] = None):
        """
        Load configuration from YAML file

        Args:
            config_path: Path to a YAML file, or None for built-in defaults

        Raises:
            ConfigurationError: If config file is missing or invalid
        """
        self.config_path = config_path
        self._config: Dict[str, Any] = self._load(config_path)

        # Cache for computed values
        self._cache: Dict[str, Any] = {}

        self._validate_config()

    @classmethod
    def discover(cls, config_path: Optional[str] = None) -> "Config":
        """
        Load an explicit file, else toric.yaml when present, else defaults.

        Args:
            config_path: Path given on the command line, if any

        Returns:
            Loaded Config
        """
        if config_path:
            return cls(config_path)
        if os.path.exists(DEFAULT_CONFIG_FILE):
            return cls(DEFAULT_CONFIG_FILE)
        return cls(None)

    @staticmethod
    def _load(config_path: Optional[str]) -> Dict[str, Any]:
        if config_path is None:
            return {}

        if not os.path.exists(config_path):
            error_msg = (
                f"Configuration file not found: {config_path}\n"
                f"Create one from the example:\n"
                f"  cp config.yaml.example {DEFAULT_CONFIG_FILE}"
            )
            raise ConfigurationError(error_msg, config_key=config_path)

        try:
            with open(config_path, "r") as f:
                loaded = yaml.safe_load(f)
        except yaml.YAMLError as e:
            error_msg = f"Invalid YAML syntax in configuration file: {e}"
            raise ConfigurationError(error_msg, config_key=config_path)
        except OSError as e:
            error_msg = f"Failed to read configuration file: {e}"
            raise ConfigurationError(error_msg, config_key=config_path)

        if loaded is None:
            return {}
        if not isinstance(loaded, dict):
            raise ConfigurationError(
                "top level must be a mapping", config_key=config_path
            )
        return loaded

    def _validate_config(self) -> None:
        """
        Validate configuration values on load.

        Soft problems are logged as warnings; values no run can work with
        raise ConfigurationError.
        """
        config_warnings: List[str] = []

        max_n = self.max_n
        if max_n < EnumerationDefaults.MIN_N:
            raise ConfigurationError(
                f"must be at least {EnumerationDefaults.MIN_N}",
                config_key="enumeration.max_n",
            )
        if max_n > EnumerationDefaults.MAX_N:
            config_warnings.append(
                f"enumeration.max_n={max_n} exceeds the tested limit "
                f"{EnumerationDefaults.MAX_N}; memory use grows as 2n*n!"
            )

        if self.threads < 1:
            raise ConfigurationError(
                "must be a positive integer", config_key="enumeration.threads"
            )

        if self.power_threshold < 1:
            raise ConfigurationError(
                "must be a positive integer",
                config_key="enumeration.power_threshold",
            )

        for key in ("render_width", "render_height", "strip_cap"):
            if getattr(self, key) <= 0:
                raise ConfigurationError(
                    "must be positive", config_key=_CONFIG_SCHEMA[key][0]
                )

        if self.samples < 1:
            config_warnings.append(
                f"verification.samples={self.samples} runs no random cases"
            )

        if self.max_gamma_m > SievingDefaults.MAX_GAMMA_M:
            config_warnings.append(
                f"sieving.max_gamma_m={self.max_gamma_m} means enumerating "
                f"S_{self.max_gamma_m}; expect long runtimes"
            )

        log_level = str(self.get("logging.level", "WARNING"))
        valid_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        if log_level.upper() not in valid_levels:
            config_warnings.append(
                f"Invalid log level '{log_level}' - "
                f"must be one of: {', '.join(sorted(valid_levels))}"
            )

        for warning in config_warnings:
            logger.warning("Configuration: %s", warning)

    def get(self, key_path: str, default: Any = None) -> Any:
        """
        Get configuration value using dot notation

        Args:
            key_path: Dot-separated path (e.g., "render.colors.reflect")
            default: Default value if key not found

        Returns:
            Configuration value or default
        """
        keys = key_path.split(".")
        value = self._config

        for key in keys:
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return default

        return value

    def __getattr__(self, name: str) -> Any:
        """Dynamic attribute access for values declared in the schema."""
        if name.startswith("_"):
            raise AttributeError(
                f"'{type(self).__name__}' has no attribute '{name}'"
            )

        if name in _CONFIG_SCHEMA:
            if name in self._cache:
                return self._cache[name]

            config_path, default, type_converter = _CONFIG_SCHEMA[name]
            value = self.get(config_path, default)

            if type_converter is not None and value is not None:
                try:
                    value = type_converter(value)
                except (ValueError, TypeError):
                    logger.warning(
                        "Configuration: Failed to convert '%s' value '%s' "
                        "to %s, using default: %s",
                        name,
                        value,
                        type_converter.__name__,
                        default,
                    )
                    value = default

            self._cache[name] = value
            return value

        raise AttributeError(
            f"'{type(self).__name__}' has no attribute '{name}'"
        )

    def override(self, **values: Any) -> None:
        """
        Override schema values, typically from command-line flags.

        None values are ignored so unset flags keep the file's values.

        Args:
            **values: Attribute names from the schema and their new values
        """
        for name, value in values.items():
            if name not in _CONFIG_SCHEMA:
                raise ConfigurationError("unknown setting", config_key=name)
            if value is not None:
                self._cache[name] = value

    def reload(self, config_path: Optional[str] = None) -> None:
        """
        Reload configuration from file.

        Args:
            config_path: Optional new config path
        """
        if config_path:
            self.config_path = config_path
        self._config = self._load(self.config_path)

        # Clear cache to force re-read of all values
        self._cache.clear()
        self._validate_config()

    def __repr__(self) -> str:
        return (
            f"Config(path={self.config_path}, max_n={self.max_n}, "
            f"threads={self.threads}, seed={self.seed})"
        )

    def to_dict(self) -> Dict[str, Any]:
        """
        Export all configuration values as a dictionary.

        Returns:
            Dictionary of all configuration values
        """
        return {name: getattr(self, name) for name in _CONFIG_SCHEMA}
