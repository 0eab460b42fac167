"""Rising and falling factorial transforms.

The rising factorial transform (RFT) keeps a power polynomial's coefficients
and moves them onto the rising factorial basis; the falling factorial
transform (FFT) does the same with falling factorials. Both are computed
exactly as a change of interpretation followed by re-expansion in the power
basis. The truncated series forms are floating point and exist to be
compared against the exact results.
"""

import logging
import math
from fractions import Fraction
from math import comb, factorial
from typing import Callable, List, Tuple

from facsum.core import poly_derivative, poly_eval
from facsum.exceptions import DomainError, NoConvergence
from facsum.managers import sequences
from facsum.models import Basis, Poly, Rational

DEFAULT_SERIES_TOLERANCE = 1e-12
DEFAULT_MAX_TERMS = 500


def _to_power_row(basis: Basis, k: int) -> List[int]:
    """Power coefficients of the k-th basis element."""
    if basis is Basis.POWER:
        return [0] * k + [1]
    if basis is Basis.RISING:
        return [sequences.stirling1_unsigned(k, i) for i in range(k + 1)]
    return [sequences.stirling1_signed(k, i) for i in range(k + 1)]


def _from_power_row(basis: Basis, k: int) -> List[int]:
    """Coefficients of x^k in the target basis."""
    if basis is Basis.POWER:
        return [0] * k + [1]
    if basis is Basis.FALLING:
        return [sequences.stirling2(k, i) for i in range(k + 1)]
    return [(-1) ** (k - i) * sequences.stirling2(k, i) for i in range(k + 1)]


def _apply_rows(p: Poly, row: Callable[[int], List[int]], target: Basis) -> Poly:
    size = len(p.coeffs)
    coeffs = [Fraction(0)] * size
    for k, a in enumerate(p.coeffs):
        if not a:
            continue
        for i, entry in enumerate(row(k)):
            coeffs[i] += a * entry
    return Poly(target, coeffs)


def convert_basis(p: Poly, target: Basis) -> Poly:
    """Re-express p in the target basis without changing it as a function."""
    if p.basis is target:
        return p
    power = p if p.basis is Basis.POWER else _apply_rows(
        p, lambda k: _to_power_row(p.basis, k), Basis.POWER
    )
    if target is Basis.POWER:
        return power
    return _apply_rows(power, lambda k: _from_power_row(target, k), target)


def _require_power(p: Poly) -> None:
    if p.basis is not Basis.POWER:
        raise DomainError(f"Transforms take power-basis polynomials, got {p.basis.value}")


def rft_apply(p: Poly, m: int = 1) -> Poly:
    """m-th power of the rising factorial transform; m = 0 is the identity."""
    _require_power(p)
    result = p
    for _ in range(abs(m)):
        if m > 0:
            result = convert_basis(result.reinterpret(Basis.RISING), Basis.POWER)
        else:
            result = convert_basis(result, Basis.RISING).reinterpret(Basis.POWER)
    return result


def fft_apply(p: Poly) -> Poly:
    """sum_k a_k (x)_k expanded in the power basis."""
    _require_power(p)
    return convert_basis(p.reinterpret(Basis.FALLING), Basis.POWER)


def inverse_touchard_form(p: Poly) -> Poly:
    """sum_k a_k (-1)^k T_k(-x), expanded; equals the inverse RFT of p."""
    _require_power(p)
    coeffs = [Fraction(0)] * len(p.coeffs)
    for k, a in enumerate(p.coeffs):
        for i, t in enumerate(sequences.touchard_poly(k).coeffs):
            coeffs[i] += a * (-1) ** (k + i) * t
    return Poly.power(coeffs)


def fft_integer_derivative(p: Poly, m: int) -> Fraction:
    """d^m/dt^m (P(t) e^t) at t = 0, i.e. sum_j C(m,j) P^(j)(0)."""
    _require_power(p)
    if m < 0:
        raise DomainError(f"Derivative order must be non-negative, got {m}")
    return sum(
        (comb(m, j) * factorial(j) * a for j, a in enumerate(p.coeffs) if j <= m),
        Fraction(0),
    )


def forward_difference(p: Poly, x: Rational, k: int) -> Fraction:
    """Delta^k of t -> P(-t) at t = x: sum_i C(k,i) (-1)^(k-i) P(-x-i)."""
    _require_power(p)
    x = Fraction(x)
    return sum(
        ((-1) ** (k - i) * comb(k, i) * poly_eval(p, -x - i) for i in range(k + 1)),
        Fraction(0),
    )


def dobinski_taylor_form(p: Poly, x: Rational, y: Rational) -> Fraction:
    """sum_i f^(i)(x)/i! T_i(y) with f(t) = P(-t).

    The Touchard form of the generalized Dobinski sum, exact.
    """
    _require_power(p)
    x, y = Fraction(x), Fraction(y)
    total = Fraction(0)
    derivative = p
    i = 0
    while not derivative.is_zero:
        # f^(i)(x) = (-1)^i P^(i)(-x)
        touchard = poly_eval(sequences.touchard_poly(i), y)
        total += (-1) ** i * poly_eval(derivative, -x) / factorial(i) * touchard
        derivative = poly_derivative(derivative)
        i += 1
    return total


def _sum_series(
    term: Callable[[int], float],
    max_terms: int,
    tol: float,
    tail_start: float,
    label: str,
) -> float:
    """Add terms until one falls below tol * max(1, |partial|) past tail_start."""
    if max_terms < 1:
        raise DomainError(f"max_terms must be at least 1, got {max_terms}")
    if tol <= 0:
        raise DomainError(f"Series tolerance must be positive, got {tol}")
    terms: List[float] = []
    partial = 0.0
    for k in range(max_terms):
        value = term(k)
        terms.append(value)
        partial += value
        if k >= tail_start and abs(value) < tol * max(1.0, abs(partial)):
            logging.debug(f"🧮 {label}: converged after {k + 1} terms")
            return math.fsum(terms)
    raise NoConvergence(f"{label} did not converge within {max_terms} terms")


def _tail_start(degree: int, x: float) -> float:
    # terms decay monotonically once k passes the peak near e*|x| + degree
    return degree + math.e * abs(x) + 1


def rft_inverse_series(
    p: Poly,
    x: float,
    max_terms: int = DEFAULT_MAX_TERMS,
    tol: float = DEFAULT_SERIES_TOLERANCE,
) -> float:
    """e^x sum_k (-1)^k P(-k) x^k / k!, truncated."""
    _require_power(p)
    x = float(x)

    def term(k: int) -> float:
        return float(poly_eval(p, Fraction(-k))) * _power_over_factorial(-x, k)

    series = _sum_series(term, max_terms, tol, _tail_start(p.degree or 0, x), "inverse RFT series")
    return math.exp(x) * series


def touchard_dobinski(
    n: int,
    x: float,
    max_terms: int = DEFAULT_MAX_TERMS,
    tol: float = DEFAULT_SERIES_TOLERANCE,
) -> float:
    """e^-x sum_k k^n x^k / k!, truncated."""
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    x = float(x)

    def term(k: int) -> float:
        return float(k ** n) * _power_over_factorial(x, k)

    series = _sum_series(term, max_terms, tol, _tail_start(n, x), "Dobinski series")
    return math.exp(-x) * series


def generalized_dobinski(
    p: Poly, x: float, y: float, max_terms: int = DEFAULT_MAX_TERMS
) -> Tuple[float, float]:
    """Both sides of the generalized Dobinski formula.

    Returns:
        lhs = sum_{k<=deg} Delta^k P(-x)/k! y^k (finite, exact then rounded)
        rhs = e^-y sum_{k<max_terms} P(-x-k) y^k / k! (truncated)
    """
    _require_power(p)
    degree = p.degree or 0
    if max_terms < degree + 1:
        raise DomainError(f"max_terms must be at least {degree + 1}, got {max_terms}")
    exact_x, exact_y = Fraction(x), Fraction(y)
    lhs = sum(
        (
            forward_difference(p, exact_x, k) / factorial(k) * exact_y ** k
            for k in range(degree + 1)
        ),
        Fraction(0),
    )
    terms = [
        float(poly_eval(p, -exact_x - k)) * _power_over_factorial(float(y), k)
        for k in range(max_terms)
    ]
    rhs = math.exp(-float(y)) * math.fsum(terms)
    return float(lhs), rhs


def _power_over_factorial(x: float, k: int) -> float:
    """x^k / k!, directly while k! fits in a float and through logs past that."""
    if k == 0:
        return 1.0
    if x == 0.0:
        return 0.0
    if k <= 170:
        try:
            return x ** k / float(factorial(k))
        except OverflowError:
            pass
    log_magnitude = k * math.log(abs(x)) - math.lgamma(k + 1)
    if log_magnitude < -745.0:
        return 0.0
    magnitude = math.exp(log_magnitude)
    return -magnitude if x < 0 and k % 2 else magnitude
