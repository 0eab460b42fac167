"""Summation reduction for super-recurrences.

A row sum sum_{k=n0}^{n} A_{n,k} is collapsed by pushing coefficient vectors
c_{s,.}(n) one row up per step until only the seed A_{n0,n0} remains. The
weighted row sums (power and rising factorial weights) use the Y and y
recurrences, evaluated by dynamic programming over (m', k).

Index convention: any term whose column index leaves [n0, current upper row]
contributes zero. The propagation inner sum runs over j = 0..m, the recurrence
order.
"""

import logging
from fractions import Fraction
from math import comb, factorial
from typing import Callable, List, Optional, Tuple

from facsum.core import poly_eval, poly_mul, rising_factorial
from facsum.exceptions import DomainError, UnsupportedRecurrence
from facsum.managers import sequences
from facsum.models import (
    AffineFn,
    Poly,
    Rational,
    ReductionTrace,
    SequenceKind,
    SuperRecurrence,
    WeightKind,
)


_PRESET_FACTORS = {
    SequenceKind.BINOMIAL: AffineFn.constant(1),
    SequenceKind.STIRLING1: AffineFn(alpha=1, gamma=-1),
    SequenceKind.STIRLING2: AffineFn(beta=1),
}


def preset(kind: SequenceKind, r: int = 0) -> SuperRecurrence:
    """Super-recurrence of a preset triangle (f by kind, g = 1).

    r > 0 gives the r-Stirling variant seeded at A_{r,r} = 1.
    """
    base = kind.base_kind
    if r < 0:
        raise DomainError(f"r must be non-negative, got {r}")
    if base is SequenceKind.BINOMIAL and r:
        raise DomainError("Binomial coefficients have no r-variant")
    name = base.value if not r else f"r{base.value}[r={r}]"
    return SuperRecurrence(
        coeffs=(_PRESET_FACTORS[base], AffineFn.constant(1)),
        lower_bound=r,
        base_value=1,
        name=name,
    )


def _resolve_lower_bound(rec: SuperRecurrence, n: int, n0: Optional[int]) -> int:
    lower = rec.lower_bound if n0 is None else n0
    if lower < 0:
        raise DomainError(f"Lower bound must be non-negative, got {lower}")
    if n < lower:
        raise DomainError(f"Upper bound {n} is below lower bound {lower}")
    return lower


def build_triangle(rec: SuperRecurrence, n: int, n0: int) -> List[List[Fraction]]:
    """Rows n0..n of A, each indexed by column offset from n0 (brute force)."""
    rows: List[List[Fraction]] = [[Fraction(rec.base_value)]]
    for row in range(n0 + 1, n + 1):
        previous = rows[-1]
        current = []
        for k in range(n0, row + 1):
            value = Fraction(0)
            for i, coefficient in enumerate(rec.coeffs):
                column = k - i
                if n0 <= column <= row - 1:
                    value += coefficient(row, k) * previous[column - n0]
            current.append(value)
        rows.append(current)
    return rows


def _weight(kind: Optional[WeightKind], x: Optional[Rational]) -> Callable[[int], Fraction]:
    if kind is None:
        return lambda k: Fraction(1)
    if x is None:
        raise DomainError("A weighted sum needs an evaluation point x")
    x = Fraction(x)
    if kind is WeightKind.POWER:
        return lambda k: x ** k
    return lambda k: Fraction(rising_factorial(x, k))


def direct_sum(
    rec: SuperRecurrence,
    n: int,
    n0: Optional[int] = None,
    weight: Optional[WeightKind] = None,
    x: Optional[Rational] = None,
) -> Fraction:
    """Oracle: build the full triangle and sum row n with optional weights."""
    lower = _resolve_lower_bound(rec, n, n0)
    w = _weight(weight, x)
    row = build_triangle(rec, n, lower)[-1]
    return sum((value * w(lower + i) for i, value in enumerate(row)), Fraction(0))


def reduce_sum(
    rec: SuperRecurrence, n: int, n0: Optional[int] = None
) -> Tuple[Fraction, ReductionTrace]:
    """Collapse sum_{k=n0}^{n} A_{n,k} to c_{n-n0,n0}(n) * A_{n0,n0}.

    Returns:
        The exact value and the trace of every coefficient vector
    """
    lower = _resolve_lower_bound(rec, n, n0)
    current = [Fraction(1)] * (n - lower + 1)
    steps: List[Tuple[Fraction, ...]] = []
    for s in range(1, n - lower + 1):
        row = n - s + 1
        upper = n - s
        propagated = []
        for i in range(lower, upper + 1):
            value = Fraction(0)
            for j, coefficient in enumerate(rec.coeffs):
                column = i + j
                if column <= row:
                    value += current[column - lower] * coefficient(row, column)
            propagated.append(value)
        current = propagated
        steps.append(tuple(current))
        logging.debug(f"🧮 {rec.name}: step {s} leaves {len(current)} coefficients")
    final_value = current[0] * rec.base_value
    return final_value, ReductionTrace(lower_bound=lower, steps=tuple(steps), final_value=final_value)


def diagonal_value(rec: SuperRecurrence, n: int) -> Fraction:
    """prod_{i=1}^{n} g(i,i)."""
    if not rec.is_two_term:
        raise UnsupportedRecurrence("The diagonal product needs a two-term super-recurrence")
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    product = Fraction(1)
    for i in range(1, n + 1):
        product *= rec.g(i, i)
    return product


def _y_entry(
    rec: SuperRecurrence,
    n: int,
    m: int,
    k: int,
    step: Callable[[int], Fraction],
) -> Fraction:
    """Shared DP for Y_{m,k} and y_{m,k}: step(k) is x or x+k."""
    if not rec.is_two_term:
        raise UnsupportedRecurrence("Y/y recurrences need a two-term super-recurrence")
    if m < 0 or k < 0:
        raise DomainError(f"Indices must be non-negative, got m={m}, k={k}")
    # layer[j] holds the value at column k + j
    layer: List[Fraction] = [Fraction(1)] * (m + 1)
    for level in range(1, m + 1):
        row = n - level + 1
        layer = [
            rec.f(row, k + j) * layer[j] + step(k + j) * rec.g(row, k + j + 1) * layer[j + 1]
            for j in range(m - level + 1)
        ]
    return layer[0]


def y_power_entry(rec: SuperRecurrence, n: int, m: int, k: int, x: Rational) -> Fraction:
    """Y_{m,k}(x) at summation upper bound n."""
    x = Fraction(x)
    return _y_entry(rec, n, m, k, lambda column: x)


def y_rising_entry(rec: SuperRecurrence, n: int, m: int, k: int, x: Rational) -> Fraction:
    """y_{m,k}(x) at summation upper bound n."""
    x = Fraction(x)
    return _y_entry(rec, n, m, k, lambda column: x + column)


def y_power(rec: SuperRecurrence, n: int, n0: Optional[int], x: Rational) -> Fraction:
    """sum_{k=n0}^{n} A_{n,k} x^k = x^{n0} A_{n0,n0} Y_{n-n0,n0}(x)."""
    lower = _resolve_lower_bound(rec, n, n0)
    x = Fraction(x)
    return x ** lower * rec.base_value * y_power_entry(rec, n, n - lower, lower, x)


def y_rising(rec: SuperRecurrence, n: int, n0: Optional[int], x: Rational) -> Fraction:
    """sum_{k=n0}^{n} A_{n,k} x^(k rising) = x^(n0 rising) A_{n0,n0} y_{n-n0,n0}(x)."""
    lower = _resolve_lower_bound(rec, n, n0)
    x = Fraction(x)
    return rising_factorial(x, lower) * rec.base_value * y_rising_entry(rec, n, n - lower, lower, x)


def closed_sum_power(kind: SequenceKind, n: int, x: Rational) -> Fraction:
    """(x+1)^n, x^(n rising) or T_n(x) for the three preset triangles."""
    x = Fraction(x)
    base = kind.base_kind
    if base is SequenceKind.BINOMIAL:
        return (x + 1) ** n
    if base is SequenceKind.STIRLING1:
        return Fraction(rising_factorial(x, n))
    return poly_eval(sequences.touchard_poly(n), x)


def closed_y_power(kind: SequenceKind, n: int, m: int, k: int, x: Rational) -> Fraction:
    """Closed forms of Y_{m,k}(x) at upper bound n."""
    x = Fraction(x)
    base = kind.base_kind
    if base is SequenceKind.BINOMIAL:
        return (x + 1) ** m
    if base is SequenceKind.STIRLING1:
        return Fraction(rising_factorial(x + n - m, m))
    return y_closed_stirling2_Y(m, k, x)


def y_closed_stirling2_Y(n: int, k: int, x: Rational) -> Fraction:
    """Y_{n,k}(x) = T_{n,k}(x), the r-Touchard polynomial with r = k."""
    return poly_eval(sequences.r_touchard_poly(n, k), Fraction(x))


def unfolded_y_binomial(n: int, k: int, x: Rational) -> Fraction:
    """Top-down unfolding sum_{i<n} C(n-1,i) (x+k+i+1) (x+k)^(i rising)."""
    if n < 1:
        raise DomainError("The unfolded binomial form starts at n = 1")
    shifted = Fraction(x) + k
    return sum(
        (comb(n - 1, i) * (shifted + i + 1) * rising_factorial(shifted, i) for i in range(n)),
        Fraction(0),
    )


def closed_y_stirling1(n: int, m: int, k: int, x: Rational) -> Fraction:
    """y_{m,k}(x) for the Stirling-1 row: the rising transform of (t+n-1)_m at x+k."""
    shifted = Fraction(x) + k
    coeffs = falling_shift_poly(n, m).coeffs
    return sum(
        (c * rising_factorial(shifted, j) for j, c in enumerate(coeffs)), Fraction(0)
    )


def unfolded_y_stirling1(n: int, m: int, k: int, x: Rational) -> Fraction:
    """Bottom-up double sum over [m,j] C(j,i) (-1)^(m-j) (n-1)^(j-i) (x+k)^(i rising)."""
    shifted = Fraction(x) + k
    total = Fraction(0)
    for j in range(m + 1):
        outer = sequences.stirling1_unsigned(m, j) * (-1) ** (m - j)
        if not outer:
            continue
        for i in range(j + 1):
            total += outer * comb(j, i) * (n - 1) ** (j - i) * rising_factorial(shifted, i)
    return total


def unfolded_y_stirling2(n: int, k: int, x: Rational) -> Fraction:
    """sum_j (k+j)^n x^j / j! * sum_{i<=n-j} (-x)^i / i!."""
    x = Fraction(x)
    total = Fraction(0)
    for j in range(n + 1):
        tail = Fraction(0)
        term = Fraction(1)
        for i in range(n - j + 1):
            tail += term
            term = term * (-x) / (i + 1)
        total += Fraction((k + j) ** n) * x ** j / factorial(j) * tail
    return total


def rising_stirling2_sum(n: int, k: int, x: Rational) -> Fraction:
    """y_{n,k}(x) = sum_i {n+k, i+k}_k (x+k)^(i rising) for the Stirling-2 row."""
    shifted = Fraction(x) + k
    coeffs = sequences.r_touchard_poly(n, k).coeffs
    return sum(
        (c * rising_factorial(shifted, i) for i, c in enumerate(coeffs)), Fraction(0)
    )


def integrand_poly(kind: SequenceKind, n: int) -> Poly:
    """Power-basis Q with sum_k A_{n,k} x^(k rising) = RFT(Q)(x)."""
    base = kind.base_kind
    if base is SequenceKind.BINOMIAL:
        return Poly.power(sequences.binomial(n, i) for i in range(n + 1))
    if base is SequenceKind.STIRLING1:
        return Poly.power(sequences.stirling1_unsigned(n, i) for i in range(n + 1))
    return sequences.touchard_poly(n)


def falling_shift_poly(n: int, m: int) -> Poly:
    """(t+n-1)_m in the power basis."""
    product = Poly.power([1])
    for i in range(m):
        product = poly_mul(product, Poly.power([n - 1 - i, 1]))
    return product
