"""Utility functions for Facsum."""

import logging
import re
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Tuple, Union

from facsum.exceptions import ValidationError

_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def setup_logging(log_file: Optional[Union[str, Path]], log_level: str) -> None:
    """Configure logging for the application.

    Args:
        log_file: Path to the log file; None logs to stderr
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
    """
    log_level_obj = getattr(logging, log_level.upper(), None)
    if not isinstance(log_level_obj, int):
        raise ValidationError(f"Unknown log level: {log_level}")

    # Keep numeric libraries quiet
    for logger_name in ["numpy", "scipy", "hypothesis", "asyncio"]:
        logger = logging.getLogger(logger_name)
        logger.setLevel(logging.WARNING)
        logger.propagate = False

    # Clear any existing handlers (in case logging was already configured)
    root_logger = logging.getLogger()
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    logging.basicConfig(
        filename=log_file or None,
        level=log_level_obj,
        format="%(asctime)s %(levelname)s %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    logging.debug(f"Logging initialized at {log_level} level")


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational literal ("p/q" or an integer).

    Args:
        text: Literal such as "3", "-2/5" or "+7/3"

    Returns:
        The value as a Fraction

    Raises:
        ValidationError: For decimals, zero denominators or anything else
    """
    match = _RATIONAL_PATTERN.match(text)
    if not match:
        raise ValidationError(f"Not an exact rational literal: {text!r} (use p/q)")
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise ValidationError(f"Zero denominator in {text!r}")
    return Fraction(int(numerator), int(denominator) if denominator else 1)


def parse_rational_list(text: str) -> List[Fraction]:
    """Parse a comma-separated list of rational literals."""
    if not text.strip():
        raise ValidationError("Empty coefficient list")
    return [parse_rational(part) for part in text.split(",")]


def parse_real(text: str) -> float:
    """Parse a real literal; rationals in p/q form are accepted too."""
    try:
        return float(text)
    except ValueError:
        return float(parse_rational(text))


def format_number(value: Union[int, Fraction, float, None]) -> str:
    """Exact decimal for integers, "p/q" for rationals, shortest repr for floats."""
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_params(params: Tuple[Tuple[str, str], ...]) -> str:
    """Flatten parameters into the single-column "name=value;..." form."""
    return ";".join(f"{name}={value}" for name, value in params)


def make_params(**values) -> Tuple[Tuple[str, str], ...]:
    """Named parameters as (name, text) pairs, in call order."""
    pairs = []
    for name, value in values.items():
        if isinstance(value, Enum):
            text = str(value.value)
        elif isinstance(value, (int, Fraction, float)) and not isinstance(value, bool):
            text = format_number(value)
        else:
            text = str(value)
        pairs.append((name, text))
    return tuple(pairs)
