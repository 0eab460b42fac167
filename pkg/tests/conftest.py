"""Shared fixtures for the Facsum test suite."""

import logging
from fractions import Fraction
from pathlib import Path
from typing import List, Tuple

import pytest
from hypothesis import strategies as st

from facsum.main import run
from facsum.managers.sequences import SequenceManager
from facsum.models import Poly

GOLDEN_DIR = Path(__file__).parent / "golden"

RATIONAL_POINTS = [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(-1, 3)]

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def rational_polys(max_degree: int = 12) -> st.SearchStrategy:
    """Power-basis polynomials with small rational coefficients."""
    return st.lists(small_rationals, min_size=0, max_size=max_degree + 1).map(Poly.power)


@pytest.fixture
def manager() -> SequenceManager:
    """A fresh manager so cache state never leaks between tests."""
    return SequenceManager()


@pytest.fixture(autouse=True)
def _isolate_environment(monkeypatch):
    monkeypatch.delenv("FACSUM_MAX_N", raising=False)
    yield
    root = logging.getLogger()
    for handler in root.handlers[:]:
        root.removeHandler(handler)


@pytest.fixture
def cli(capsys):
    """Run the CLI in-process and return (exit code, stdout, stderr)."""

    def invoke(*argv: str) -> Tuple[int, str, str]:
        code = run(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke


def lines(text: str) -> List[str]:
    return text.rstrip("\n").split("\n") if text else []
