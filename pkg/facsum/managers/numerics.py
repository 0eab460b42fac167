"""Floating-point verification layer.

Real gamma, upper incomplete gamma and generalized Gauss-Laguerre rules, plus
the checks that compare the integral representations against the exact
values from the reduction and transform modules. Integrands are polynomials
times t^alpha e^-t, so a Gaussian rule of sufficient order is exact up to
rounding.
"""

import logging
import math
from dataclasses import replace
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple, Union

import numpy as np
from scipy import special

from facsum.core import poly_eval, poly_shift
from facsum.exceptions import DomainError, NoConvergence
from facsum.managers import reduction, sequences, transforms
from facsum.models import (
    Basis,
    IntegralSuiteConfig,
    Poly,
    QuadratureRule,
    SequenceKind,
    VerifyReport,
)
from facsum.utils import format_number, make_params

DEFAULT_TOLERANCE = 1e-10
NEWTON_TOLERANCE = 1e-14
NEWTON_MAX_ITERATIONS = 50
NEWTON_ACCEPTABLE = 1e-12

Real = Union[float, Fraction]


def gamma_real(x: float) -> float:
    """Gamma on the positive axis."""
    x = float(x)
    if x <= 0 or not math.isfinite(x):
        raise DomainError(f"gamma_real is defined for finite x > 0, got {x}")
    return float(special.gamma(x))


def _laguerre_with_derivative(order: int, alpha: float, t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """L_order^(alpha)(t) and its derivative by the three-term recurrence."""
    previous = np.ones_like(t)
    current = 1.0 + alpha - t
    if order == 0:
        return previous, np.zeros_like(t)
    for k in range(1, order):
        previous, current = current, ((2 * k + 1 + alpha - t) * current - (k + alpha) * previous) / (k + 1)
    # t L_n' = n L_n - (n + alpha) L_{n-1}
    derivative = (order * current - (order + alpha) * previous) / t
    return current, derivative


@lru_cache(maxsize=128)
def gauss_laguerre(alpha: float, order: int) -> QuadratureRule:
    """Generalized Gauss-Laguerre rule for the weight t^alpha e^-t on (0, inf).

    Nodes start from scipy's estimates and are Newton-refined on the
    recurrence; weights use Gamma(n+alpha+1) / (n! t_i L_n'(t_i)^2).

    Raises:
        DomainError: If alpha <= -1 or order < 1
        NoConvergence: If Newton refinement stalls
    """
    alpha = float(alpha)
    if alpha <= -1:
        raise DomainError(f"Laguerre weight exponent must exceed -1, got {alpha}")
    if order < 1:
        raise DomainError(f"Quadrature order must be at least 1, got {order}")

    guesses, _ = special.roots_genlaguerre(order, alpha)
    nodes = np.sort(np.asarray(guesses, dtype=float))
    for iteration in range(NEWTON_MAX_ITERATIONS):
        value, derivative = _laguerre_with_derivative(order, alpha, nodes)
        step = value / derivative
        nodes = nodes - step
        if np.all(np.abs(step) <= NEWTON_TOLERANCE * np.abs(nodes)):
            logging.debug(f"🧮 Laguerre order {order}, alpha {alpha}: {iteration + 1} Newton steps")
            break
    else:
        # rounding in the recurrence can keep the last step just above the target
        worst = float(np.max(np.abs(step) / np.abs(nodes)))
        if worst > NEWTON_ACCEPTABLE:
            raise NoConvergence(f"Newton refinement failed for order {order}, alpha {alpha}")
        logging.warning(f"⚠️ Laguerre order {order}, alpha {alpha}: nodes settled at {worst:.1e}")

    _, derivative = _laguerre_with_derivative(order, alpha, nodes)
    log_scale = special.gammaln(order + alpha + 1) - special.gammaln(order + 1)
    weights = np.exp(log_scale) / (nodes * derivative ** 2)

    if np.any(nodes <= 0) or np.any(np.diff(nodes) <= 0) or np.any(weights <= 0):
        raise NoConvergence(f"Degenerate Laguerre rule for order {order}, alpha {alpha}")

    return QuadratureRule(
        alpha=alpha,
        nodes=tuple(float(t) for t in nodes),
        weights=tuple(float(w) for w in weights),
        order=order,
    )


def integrate_rule(rule: QuadratureRule, p: Poly) -> float:
    """sum_i w_i P(t_i) for a polynomial in any basis."""
    if p.basis is not Basis.POWER:
        p = transforms.convert_basis(p, Basis.POWER)
    coefficients = [float(c) for c in p.coeffs] or [0.0]
    values = np.polynomial.polynomial.polyval(np.asarray(rule.nodes), coefficients)
    return math.fsum(float(w * v) for w, v in zip(rule.weights, values))


def minimum_order(p: Poly) -> int:
    degree = p.degree or 0
    return math.ceil((degree + 1) / 2) + 2


def weighted_integral(p: Poly, x: float, order: Optional[int] = None) -> float:
    """(1/Gamma(x)) int_0^inf P(t) t^(x-1) e^-t dt, the RFT of P evaluated at x."""
    x = float(x)
    if x <= 0:
        raise DomainError(f"The rising factorial transform integral needs x > 0, got {x}")
    needed = minimum_order(p)
    if order is None:
        order = needed
    elif order < needed:
        raise DomainError(f"Quadrature order {order} is below the required {needed}")
    return integrate_rule(gauss_laguerre(x - 1.0, order), p) / gamma_real(x)


def incomplete_gamma_upper(s: float, x: float) -> float:
    """Gamma(s, x) = int_x^inf t^(s-1) e^-t dt.

    Integer s uses the finite sum sum_{k<=n} n!/k! x^k e^-x with n = s-1.
    """
    s, x = float(s), float(x)
    if s <= 0 or x < 0 or not (math.isfinite(s) and math.isfinite(x)):
        raise DomainError(f"Incomplete gamma needs s > 0 and x >= 0, got s={s}, x={x}")
    if s.is_integer():
        n = int(s) - 1
        # n!/k! x^k, accumulated from k = n downwards
        terms = []
        term = 1.0
        for k in range(n, -1, -1):
            terms.append(term * x ** k)
            term *= k if k else 1
        return math.fsum(terms) * math.exp(-x)
    return float(special.gammaincc(s, x) * special.gamma(s))


def incomplete_gamma_quadrature(n: int, x: float, order: Optional[int] = None) -> float:
    """Gamma(n+1, x) as e^-x int_0^inf (u+x)^n e^-u du (shifted Laguerre rule)."""
    if n < 0 or x < 0:
        raise DomainError(f"Shifted quadrature needs n >= 0 and x >= 0, got n={n}, x={x}")
    shifted = poly_shift(Poly.power([0] * n + [1]), Fraction(x))
    return integrate_rule(gauss_laguerre(0.0, order or minimum_order(shifted)), shifted) * math.exp(-x)


def verify_rising_sum(
    kind: SequenceKind, n: int, x: Real, tolerance: float = DEFAULT_TOLERANCE
) -> VerifyReport:
    """Integral representation of sum_k A_{n,k} x^(k rising) against the y recurrence."""
    exact_x = Fraction(x)
    exact = reduction.y_rising(reduction.preset(kind), n, 0, exact_x)
    numeric = weighted_integral(reduction.integrand_poly(kind, n), float(exact_x))
    return VerifyReport.compare(
        "rising_sum_integral", make_params(kind=kind.base_kind, n=n, x=x), exact, numeric, tolerance
    )


def verify_shifted_rising_sum(
    kind: SequenceKind, n: int, k: int, x: Real, tolerance: float = DEFAULT_TOLERANCE
) -> VerifyReport:
    """y_{n,k}(x) as (1/Gamma(x+k)) int Q(t) t^(x+k-1) e^-t dt.

    Q is (t+1)^n (binomial), (t+n-1)_n (Stirling-1, upper bound n) or the
    r-Touchard polynomial T_{n,k} (Stirling-2).
    """
    exact_x = Fraction(x)
    base = kind.base_kind
    exact = reduction.y_rising_entry(reduction.preset(base), n, n, k, exact_x)
    if base is SequenceKind.BINOMIAL:
        integrand = reduction.integrand_poly(base, n)
    elif base is SequenceKind.STIRLING1:
        integrand = reduction.falling_shift_poly(n, n)
    else:
        integrand = sequences.r_touchard_poly(n, k)
    numeric = weighted_integral(integrand, float(exact_x + k))
    return VerifyReport.compare(
        "shifted_rising_sum_integral",
        make_params(kind=base, n=n, k=k, x=x),
        exact,
        numeric,
        tolerance,
    )


def verify_factorial_ratio_sum(n: int, tolerance: float = DEFAULT_TOLERANCE) -> VerifyReport:
    """sum_{i<=n} n!/i! against e * Gamma(n+1, 1)."""
    exact = sum(math.factorial(n) // math.factorial(i) for i in range(n + 1))
    numeric = math.e * incomplete_gamma_upper(n + 1, 1.0)
    return VerifyReport.compare("factorial_ratio_sum", make_params(n=n), Fraction(exact), numeric, tolerance)


def verify_incomplete_gamma_sum(n: int, x: float, tolerance: float = DEFAULT_TOLERANCE) -> VerifyReport:
    """Finite-sum Gamma(n+1, x) against the shifted quadrature."""
    return VerifyReport.compare(
        "incomplete_gamma_sum",
        make_params(n=n, x=x),
        incomplete_gamma_upper(n + 1, x),
        incomplete_gamma_quadrature(n, x),
        tolerance,
    )


def verify_incomplete_gamma_recurrence(
    s: float, x: float, tolerance: float = DEFAULT_TOLERANCE
) -> VerifyReport:
    """Gamma(s+1, x) = s Gamma(s, x) + x^s e^-x."""
    lhs = incomplete_gamma_upper(s + 1, x)
    rhs = s * incomplete_gamma_upper(s, x) + x ** s * math.exp(-x)
    return VerifyReport.compare("incomplete_gamma_recurrence", make_params(s=s, x=x), lhs, rhs, tolerance)


def verify_delta_integral(n: int, m: int, tolerance: float = DEFAULT_TOLERANCE) -> VerifyReport:
    """y_{n,0}(m) = e/(m-1)! int_1^inf (t-1)^(m-1) t^n e^-t dt for integer m >= 1.

    Substituting t = 1 + u leaves (1/(m-1)!) int_0^inf (1+u)^n u^(m-1) e^-u du.
    """
    if m < 1:
        raise DomainError(f"m must be a positive integer, got {m}")
    exact = reduction.y_rising_entry(reduction.preset(SequenceKind.BINOMIAL), n, n, 0, m)
    integrand = reduction.integrand_poly(SequenceKind.BINOMIAL, n)
    numeric = integrate_rule(gauss_laguerre(float(m - 1), minimum_order(integrand)), integrand)
    numeric /= math.factorial(m - 1)
    return VerifyReport.compare("binomial_delta_integral", make_params(n=n, m=m), exact, numeric, tolerance)


def verify_rft_integral(p: Poly, x: float, tolerance: float = DEFAULT_TOLERANCE) -> VerifyReport:
    """Quadrature RFT against the exact rising-basis evaluation."""
    exact = poly_eval(p.reinterpret(Basis.RISING), Fraction(x))
    numeric = weighted_integral(p, x)
    return VerifyReport.compare(
        "rft_integral", make_params(coeffs=_format_coeffs(p), x=x), exact, numeric, tolerance
    )


def verify_quadrature_moments(
    alpha: float, order: int, tolerance: float = 1e-12
) -> List[VerifyReport]:
    """int t^j t^alpha e^-t dt = Gamma(alpha+j+1) for j <= 2*order - 1."""
    rule = gauss_laguerre(alpha, order)
    reports = []
    for j in range(2 * order):
        numeric = integrate_rule(rule, Poly.power([0] * j + [1]))
        exact = float(special.gamma(alpha + j + 1))
        reports.append(
            VerifyReport.compare(
                "laguerre_moment", make_params(alpha=alpha, order=order, j=j), exact, numeric, tolerance
            )
        )
    return reports


def verify_touchard_dobinski(
    n: int,
    x: float,
    tolerance: float = DEFAULT_TOLERANCE,
    series_tolerance: float = transforms.DEFAULT_SERIES_TOLERANCE,
    max_terms: int = transforms.DEFAULT_MAX_TERMS,
) -> VerifyReport:
    exact = poly_eval(sequences.touchard_poly(n), Fraction(x))
    numeric = transforms.touchard_dobinski(n, x, max_terms, series_tolerance)
    return VerifyReport.compare("dobinski_series", make_params(n=n, x=x), exact, numeric, tolerance)


def verify_generalized_dobinski(
    p: Poly, x: float, y: float, tolerance: float = DEFAULT_TOLERANCE, max_terms: int = 200
) -> VerifyReport:
    lhs, rhs = transforms.generalized_dobinski(p, x, y, max_terms)
    report = VerifyReport.compare(
        "generalized_dobinski", make_params(coeffs=_format_coeffs(p), x=x, y=y), lhs, rhs, tolerance
    )
    return _scaled(report, lhs)


def _scaled(report: VerifyReport, reference: Real) -> VerifyReport:
    """Re-judge a series check on error relative to max(1, |reference|)."""
    rel_error = report.abs_error / max(1.0, abs(float(reference)))
    return replace(report, rel_error=rel_error, passed=rel_error <= report.tolerance)


def verify_inverse_series(
    p: Poly,
    x: float,
    tolerance: float = 1e-9,
    series_tolerance: float = transforms.DEFAULT_SERIES_TOLERANCE,
    max_terms: int = transforms.DEFAULT_MAX_TERMS,
) -> VerifyReport:
    exact = poly_eval(transforms.rft_apply(p, -1), Fraction(x))
    numeric = transforms.rft_inverse_series(p, x, max_terms, series_tolerance)
    report = VerifyReport.compare(
        "inverse_rft_series", make_params(coeffs=_format_coeffs(p), x=x), exact, numeric, tolerance
    )
    return _scaled(report, exact)


def _format_coeffs(p: Poly) -> str:
    return " ".join(format_number(c) for c in p.coeffs) or "0"


INCOMPLETE_GAMMA_POINTS = (0.5, 1.0, 3.0)
INCOMPLETE_GAMMA_N_MAX = 10
RECURRENCE_ORDERS = tuple(float(s) for s in range(1, 11)) + (2.5,)
MOMENT_ORDER = 12
DELTA_M_MAX = 6
RFT_POINTS = (0.5, 1.0, 2.5, 7.25)
DOBINSKI_SHIFTS = (0.0, 1.0, -1.0, 2.0)
DOBINSKI_SCALES = (0.5, 1.0, 3.0)
INVERSE_SERIES_POINTS = (-3.0, -1.0, 0.5, 2.0, 3.0)
SHIFTED_SUM_K = (0, 1, 2)


def run_integral_suite(config: IntegralSuiteConfig) -> List[VerifyReport]:
    """All numeric checks over the configured grids, in a fixed order."""
    tolerance = config.tolerance
    series_tolerance = max(tolerance, 1e-9)
    reports: List[VerifyReport] = []

    for alpha in config.quadrature_alphas:
        reports.extend(verify_quadrature_moments(alpha, MOMENT_ORDER, tolerance))

    for kind in (SequenceKind.BINOMIAL, SequenceKind.STIRLING1, SequenceKind.STIRLING2):
        for n in config.n_values:
            for x in config.x_values:
                reports.append(verify_rising_sum(kind, n, x, tolerance))

    for kind in (SequenceKind.BINOMIAL, SequenceKind.STIRLING1, SequenceKind.STIRLING2):
        for n in config.n_values:
            for k in SHIFTED_SUM_K:
                for x in config.x_values:
                    reports.append(verify_shifted_rising_sum(kind, n, k, x, tolerance))

    for n in config.factorial_ratio_n_values:
        reports.append(verify_factorial_ratio_sum(n, tolerance))

    for n in range(min(INCOMPLETE_GAMMA_N_MAX, max(config.n_values, default=-1)) + 1):
        for x in INCOMPLETE_GAMMA_POINTS:
            reports.append(verify_incomplete_gamma_sum(n, x, tolerance))

    if config.n_values:
        for s in RECURRENCE_ORDERS:
            for x in INCOMPLETE_GAMMA_POINTS:
                reports.append(verify_incomplete_gamma_recurrence(s, x, tolerance))

    for n in config.n_values:
        for m in range(1, DELTA_M_MAX + 1):
            reports.append(verify_delta_integral(n, m, tolerance))

    for n in config.dobinski_n_values:
        reports.append(
            verify_touchard_dobinski(
                n, 1.0, series_tolerance, config.series_tolerance, config.max_terms
            )
        )

    for p in config.sample_polys:
        for x in RFT_POINTS:
            reports.append(verify_rft_integral(p, x, tolerance))
        for x in DOBINSKI_SHIFTS:
            for y in DOBINSKI_SCALES:
                reports.append(verify_generalized_dobinski(p, x, y, tolerance))
        for x in INVERSE_SERIES_POINTS:
            reports.append(
                verify_inverse_series(
                    p, x, series_tolerance, config.series_tolerance, config.max_terms
                )
            )

    failed = sum(1 for report in reports if not report.passed)
    logging.info(f"✅ Integral suite: {len(reports) - failed} passed, {failed} failed")
    return reports
