"""Configuration handling for Facsum."""

import configparser
import logging
import os
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

from facsum.exceptions import ConfigurationError, ValidationError
from facsum.utils import parse_rational_list, parse_real

DEFAULTS: Dict[str, Dict[str, str]] = {
    "general": {"log_level": "WARNING", "log_file": ""},
    "tables": {"max_n": "500"},
    "series": {"tolerance": "1e-12", "max_terms": "500"},
    "verify": {"tolerance": "1e-10", "workers": "2"},
    "identities": {
        "n_max": "6",
        "k_max": "3",
        "x_values": "1/2, 1, 3/2, 2, -1/3",
        "printed_variants": "true",
    },
    "integrals": {
        "n_max": "12",
        "x_values": "0.5, 1, 1.5, 2.5, 7.25",
        "factorial_ratio_n_max": "15",
        "dobinski_n_max": "15",
        "quadrature_alphas": "0, 0.5, 1.5, 4",
    },
}

MAX_N_ENV = "FACSUM_MAX_N"


class Config:
    """Configuration handler for Facsum.

    Built-in defaults are loaded first; an optional INI file overrides them and
    FACSUM_MAX_N overrides the table cap last.
    """

    def __init__(self, config_path: Optional[str] = None):
        """Initialize configuration.

        Args:
            config_path: Optional path to an INI file

        Raises:
            ConfigurationError: If a named file is missing or a value is invalid
        """
        self.config_parser = configparser.ConfigParser()
        self.config_parser.read_dict(DEFAULTS)
        self.config_path = Path(config_path) if config_path else None

        if self.config_path is not None and not self.config_path.exists():
            raise ConfigurationError(f"Config file not found: {config_path}")

        try:
            self._load_config()
        except ConfigurationError:
            raise
        except (configparser.Error, ValueError, ValidationError) as e:
            raise ConfigurationError(f"Error loading configuration: {e}")

    def _load_config(self) -> None:
        """Read the file, apply the environment override, then validate."""
        if self.config_path is not None:
            self.config_parser.read(self.config_path)
            logging.debug(f"📋 Loaded configuration from {self.config_path}")
        self._apply_environment()
        self._validate_config()

    def _apply_environment(self) -> None:
        value = os.environ.get(MAX_N_ENV)
        if value:
            self.config_parser.set("tables", "max_n", value.strip())
            logging.debug(f"📋 {MAX_N_ENV} sets the table cap to {value.strip()}")

    def _validate_config(self) -> None:
        """Check ranges of the numeric options."""
        for section, option in [
            ("tables", "max_n"),
            ("series", "max_terms"),
            ("verify", "workers"),
        ]:
            if self.getint(section, option) < 1:
                raise ConfigurationError(f"[{section}] {option} must be at least 1")
        for section, option in [
            ("identities", "n_max"),
            ("identities", "k_max"),
            ("integrals", "n_max"),
            ("integrals", "factorial_ratio_n_max"),
            ("integrals", "dobinski_n_max"),
        ]:
            if self.getint(section, option) < 0:
                raise ConfigurationError(f"[{section}] {option} must be non-negative")
        for section in ("series", "verify"):
            if self.getfloat(section, "tolerance") <= 0:
                raise ConfigurationError(f"[{section}] tolerance must be positive")
        for x in self.get_reals("integrals", "x_values"):
            if x <= 0:
                raise ConfigurationError(f"[integrals] x_values must be positive, got {x}")
        for alpha in self.get_reals("integrals", "quadrature_alphas"):
            if alpha <= -1:
                raise ConfigurationError(f"[integrals] quadrature_alphas must exceed -1, got {alpha}")
        self.get_rationals("identities", "x_values")
        self.getboolean("identities", "printed_variants")

    def get(self, section: str, option: str, fallback: Optional[str] = None) -> str:
        """Get a string configuration value.

        Args:
            section: Configuration section
            option: Configuration option
            fallback: Default value if the option is not found

        Returns:
            Configuration value as string
        """
        return self.config_parser.get(section, option, fallback=fallback)

    def getint(self, section: str, option: str, fallback: Optional[int] = None) -> int:
        return self.config_parser.getint(section, option, fallback=fallback)

    def getfloat(self, section: str, option: str, fallback: Optional[float] = None) -> float:
        return self.config_parser.getfloat(section, option, fallback=fallback)

    def getboolean(self, section: str, option: str, fallback: Optional[bool] = None) -> bool:
        return self.config_parser.getboolean(section, option, fallback=fallback)

    def get_path(self, section: str, option: str) -> Optional[Path]:
        """Get a path configuration value; empty values give None."""
        value = self.get(section, option, fallback="")
        return Path(value) if value else None

    def get_rationals(self, section: str, option: str) -> List[Fraction]:
        """Comma-separated exact rationals (p/q or integers)."""
        return parse_rational_list(self.get(section, option))

    def get_reals(self, section: str, option: str) -> List[float]:
        """Comma-separated reals; an empty value is an empty list."""
        text = self.get(section, option, fallback="")
        return [parse_real(part) for part in text.split(",") if part.strip()]

    def get_section(self, section: str) -> Dict[str, str]:
        """Get all options from a section.

        Args:
            section: Configuration section

        Returns:
            Dictionary of options in the section
        """
        if not self.config_parser.has_section(section):
            return {}
        return dict(self.config_parser[section])
