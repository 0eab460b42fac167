"""Exact identity checkers.

Each checker evaluates both sides of an identity with Fractions and returns
an IdentityResult. Where a printed form of the identity uses an index one
below the corrected one, that form is evaluated too and carried as the
printed variant; a mismatch there is recorded in the note and never fails
the check.
"""

import logging
from dataclasses import replace
from fractions import Fraction
from typing import Callable, List, Optional

from facsum.core import poly_eval
from facsum.exceptions import DomainError
from facsum.managers import reduction, sequences
from facsum.models import (
    AffineFn,
    IdentityResult,
    Rational,
    SequenceKind,
    SuiteConfig,
    SuperRecurrence,
)
from facsum.utils import format_number, make_params

_BINOMIAL = reduction.preset(SequenceKind.BINOMIAL)
_STIRLING1 = reduction.preset(SequenceKind.STIRLING1)
_STIRLING2 = reduction.preset(SequenceKind.STIRLING2)

# g(n, k) = k with f = 1; its diagonal is n!
FACTORIAL_DIAGONAL = SuperRecurrence(
    coeffs=(AffineFn.constant(1), AffineFn(beta=1)), name="factorial-diagonal"
)


def _touchard(n: int, x: Fraction) -> Fraction:
    return poly_eval(sequences.touchard_poly(n), x)


def _binomial_y(n: int, k: int, x: Rational) -> Fraction:
    return reduction.y_rising_entry(_BINOMIAL, n, n, k, x)


def _stirling2_y(n: int, k: int, x: Rational) -> Fraction:
    return reduction.y_power_entry(_STIRLING2, n, n, k, x)


def check_y_shift(n: int, k: int, x: Rational) -> IdentityResult:
    """Binomial row: y_{n,k}(x) = y_{n,0}(x+k)."""
    x = Fraction(x)
    return IdentityResult.compare(
        "y_shift",
        make_params(n=n, k=k, x=x),
        _binomial_y(n, k, x),
        _binomial_y(n, 0, x + k),
    )


def check_unfolded_binomial(n: int, k: int, x: Rational) -> IdentityResult:
    """Top-down unfolded sum against the y recurrence."""
    if n < 1:
        raise DomainError("The unfolded binomial form starts at n = 1")
    x = Fraction(x)
    return IdentityResult.compare(
        "unfolded_binomial",
        make_params(n=n, k=k, x=x),
        reduction.unfolded_y_binomial(n, k, x),
        _binomial_y(n, k, x),
    )


def check_delta_relation(n: int, m: int) -> IdentityResult:
    """m y_{n,0}(m+1) = y_{n+1,0}(m) - y_{n,0}(m)."""
    if m < 1:
        raise DomainError(f"m must be a positive integer, got {m}")
    return IdentityResult.compare(
        "delta_relation",
        make_params(n=n, m=m),
        m * _binomial_y(n, 0, m + 1),
        _binomial_y(n + 1, 0, m) - _binomial_y(n, 0, m),
    )


def _stirling_touchard_sum(n: int, k: int, x: Fraction, shift: int) -> Optional[Fraction]:
    """x^-k sum_i [k,i] (-1)^(k-i) T_{n+i+shift}(x); None if an index goes negative."""
    total = Fraction(0)
    for i in range(k + 1):
        coefficient = sequences.stirling1_signed(k, i)
        if not coefficient:
            continue
        if n + i + shift < 0:
            return None
        total += coefficient * _touchard(n + i + shift, x)
    return total / x ** k


def check_stirling_touchard_inverse(
    n: int, k: int, x: Rational, printed_variant: bool = True
) -> IdentityResult:
    """Y_{n,k}(x) = x^-k sum_i [k,i] (-1)^(k-i) T_{n+i}(x).

    The printed variant uses T_{n+i-1}.

    Raises:
        DomainError: At x = 0
    """
    x = Fraction(x)
    if x == 0:
        raise DomainError("The inverse Stirling form divides by x^k; x must be non-zero")
    return IdentityResult.compare(
        "stirling_touchard_inverse",
        make_params(n=n, k=k, x=x),
        _stirling2_y(n, k, x),
        _stirling_touchard_sum(n, k, x, 0),
        _stirling_touchard_sum(n, k, x, -1) if printed_variant else None,
    )


def check_touchard_from_y(
    n: int, k: int, x: Rational, printed_variant: bool = True
) -> IdentityResult:
    """T_{n+k}(x) = sum_i {k,i} x^i Y_{n,i}(x); the printed variant reads T_{n+k-1}."""
    x = Fraction(x)
    rhs = sum(
        (sequences.stirling2(k, i) * x ** i * _stirling2_y(n, i, x) for i in range(k + 1)),
        Fraction(0),
    )
    variant = None
    if printed_variant and n + k >= 1:
        variant = _touchard(n + k - 1, x)
    return IdentityResult.compare(
        "touchard_from_y",
        make_params(n=n, k=k, x=x),
        _touchard(n + k, x),
        rhs,
        variant,
    )


def _r_stirling2_or_zero(n: int, m: int, r: int) -> int:
    return sequences.r_stirling2(n, m, r) if m <= n else 0


def check_rstirling_composition(
    n: int, k: int, printed_variant: bool = True
) -> List[IdentityResult]:
    """{n+k, m} = sum_i {k,i} {n+i, m}_i for every m <= n+k.

    The right side is also rebuilt from the explicit r-Stirling formula; a
    disagreement between the two is noted and fails the check. The printed
    variant of the left side is {n+k-1, m}.
    """
    results = []
    for m in range(n + k + 1):
        lhs = sequences.stirling2(n + k, m)
        rhs = Fraction(0)
        explicit = Fraction(0)
        for i in range(k + 1):
            outer = sequences.stirling2(k, i)
            if not outer:
                continue
            rhs += outer * _r_stirling2_or_zero(n + i, m, i)
            if m >= i:
                explicit += outer * sequences.r_stirling2_explicit(n, m - i, i)
        variant = None
        if printed_variant and n + k >= 1:
            variant = sequences.stirling2(n + k - 1, m)
        result = IdentityResult.compare(
            "rstirling_composition", make_params(n=n, k=k, m=m), lhs, rhs, variant
        )
        if explicit != rhs:
            note = f"explicit formula gives {format_number(explicit)}"
            result = replace(
                result,
                passed=False,
                note="; ".join(part for part in (result.note, note) if part),
            )
        results.append(result)
    return results


def check_rstirling_explicit(n: int, i: int, k: int) -> IdentityResult:
    """{n+k, i+k}_k from the recurrence against the alternating-sum formula."""
    return IdentityResult.compare(
        "rstirling_explicit",
        make_params(n=n, i=i, k=k),
        sequences.r_stirling2(n + k, i + k, k),
        sequences.r_stirling2_explicit(n, i, k),
    )


def check_diagonal(rec: SuperRecurrence, n: int) -> IdentityResult:
    """Triangle diagonal A_{n,n} against base_value * prod_{i<=n} g(i,i)."""
    diagonal = reduction.build_triangle(rec, n, 0)[-1][-1]
    return IdentityResult.compare(
        "diagonal",
        make_params(rec=rec.name, n=n),
        diagonal,
        rec.base_value * reduction.diagonal_value(rec, n),
    )


def check_stirling1_closed(n: int, m: int, k: int, x: Rational) -> IdentityResult:
    """Stirling-1 y_{m,k}(x): recurrence against the falling-factorial closed form.

    The bottom-up unfolded double sum must agree as well.
    """
    x = Fraction(x)
    closed = reduction.closed_y_stirling1(n, m, k, x)
    result = IdentityResult.compare(
        "stirling1_closed",
        make_params(n=n, m=m, k=k, x=x),
        reduction.y_rising_entry(_STIRLING1, n, m, k, x),
        closed,
    )
    unfolded = reduction.unfolded_y_stirling1(n, m, k, x)
    if unfolded != closed:
        result = replace(
            result, passed=False, note=f"unfolded sum gives {format_number(unfolded)}"
        )
    return result


def check_stirling2_unfolded(n: int, k: int, x: Rational) -> IdentityResult:
    """Stirling-2 Y_{n,k}(x): recurrence against the truncated Dobinski-type sum."""
    x = Fraction(x)
    return IdentityResult.compare(
        "stirling2_unfolded",
        make_params(n=n, k=k, x=x),
        _stirling2_y(n, k, x),
        reduction.unfolded_y_stirling2(n, k, x),
    )


def _y_shift_family(config: SuiteConfig) -> List[IdentityResult]:
    return [
        check_y_shift(n, k, x)
        for n in config.n_values
        for k in config.k_values
        for x in config.x_values
    ]


def _unfolded_binomial_family(config: SuiteConfig) -> List[IdentityResult]:
    return [
        check_unfolded_binomial(n, k, x)
        for n in config.n_values
        if n >= 1
        for k in config.k_values
        for x in config.x_values
    ]


def _delta_family(config: SuiteConfig) -> List[IdentityResult]:
    return [check_delta_relation(n, m) for n in config.n_values for m in config.m_values]


def _inverse_stirling_family(config: SuiteConfig) -> List[IdentityResult]:
    results = []
    for n in config.n_values:
        for k in config.k_values:
            for x in config.x_values:
                if x != 0:
                    results.append(
                        check_stirling_touchard_inverse(n, k, x, config.printed_variants)
                    )
                results.append(check_touchard_from_y(n, k, x, config.printed_variants))
    return results


def _composition_family(config: SuiteConfig) -> List[IdentityResult]:
    results = []
    for n in config.n_values:
        for k in config.k_values:
            results.extend(check_rstirling_composition(n, k, config.printed_variants))
            for i in range(n + 1):
                results.append(check_rstirling_explicit(n, i, k))
    return results


def _diagonal_family(config: SuiteConfig) -> List[IdentityResult]:
    recurrences = (_BINOMIAL, _STIRLING1, _STIRLING2, FACTORIAL_DIAGONAL)
    return [check_diagonal(rec, n) for rec in recurrences for n in config.n_values]


def _closed_form_family(config: SuiteConfig) -> List[IdentityResult]:
    results = []
    for n in config.n_values:
        for k in config.k_values:
            for x in config.x_values:
                for m in range(1, n + 1):
                    results.append(check_stirling1_closed(n, m, k, x))
                results.append(check_stirling2_unfolded(n, k, x))
    return results


SUITE_FAMILIES: List[Callable[[SuiteConfig], List[IdentityResult]]] = [
    _y_shift_family,
    _unfolded_binomial_family,
    _delta_family,
    _inverse_stirling_family,
    _composition_family,
    _diagonal_family,
    _closed_form_family,
]


def run_suite(config: SuiteConfig) -> List[IdentityResult]:
    """Every checker over the configured grids, families in a fixed order."""
    results: List[IdentityResult] = []
    for family in SUITE_FAMILIES:
        results.extend(family(config))
    failed = sum(1 for result in results if not result.passed)
    flagged = sum(1 for result in results if result.has_discrepancy)
    logging.info(
        f"✅ Identity suite: {len(results) - failed} passed, {failed} failed, "
        f"{flagged} printed-index discrepancies"
    )
    return results
