"""Exact arithmetic substrate: factorial products and basis-tagged polynomials.

Values are Python ints and Fractions (exact) or floats (numeric layer). All
functions are pure; Poly instances are immutable.
"""

from fractions import Fraction
from typing import List, Union

from facsum.exceptions import BasisMismatch, DomainError
from facsum.models import Basis, Poly, Rational, Scalar


def rising_factorial(x: Scalar, n: int) -> Scalar:
    """x (x+1) ... (x+n-1) by the product form; n = 0 gives 1.

    The product stays finite at non-positive x, where the gamma ratio has poles.
    """
    if n < 0:
        raise DomainError(f"Factorial length must be non-negative, got {n}")
    result = 1 if not isinstance(x, float) else 1.0
    for i in range(n):
        result *= x + i
    return result


def falling_factorial(x: Scalar, n: int) -> Scalar:
    """x (x-1) ... (x-n+1); n = 0 gives 1."""
    if n < 0:
        raise DomainError(f"Factorial length must be non-negative, got {n}")
    result = 1 if not isinstance(x, float) else 1.0
    for i in range(n):
        result *= x - i
    return result


def basis_values(basis: Basis, x: Scalar, count: int) -> List[Scalar]:
    """B_0(x), ..., B_{count-1}(x) for the given basis."""
    values: List[Scalar] = []
    current: Scalar = 1.0 if isinstance(x, float) else Fraction(1)
    for k in range(count):
        values.append(current)
        if basis is Basis.POWER:
            current = current * x
        elif basis is Basis.RISING:
            current = current * (x + k)
        else:
            current = current * (x - k)
    return values


def poly_eval(p: Poly, x: Scalar) -> Scalar:
    """Evaluate sum_k coeffs[k] * B_k(x) in the polynomial's own basis."""
    if p.is_zero:
        return 0.0 if isinstance(x, float) else Fraction(0)
    if p.basis is Basis.POWER:
        # Horner
        acc: Scalar = 0.0 if isinstance(x, float) else Fraction(0)
        for c in reversed(p.coeffs):
            acc = acc * x + (float(c) if isinstance(x, float) else c)
        return acc
    values = basis_values(p.basis, x, len(p.coeffs))
    if isinstance(x, float):
        return sum(float(c) * b for c, b in zip(p.coeffs, values))
    return sum((c * b for c, b in zip(p.coeffs, values)), Fraction(0))


def normalize(p: Poly) -> Poly:
    """Canonical form (trailing zeros stripped); idempotent."""
    return Poly(p.basis, p.coeffs)


def poly_add(p: Poly, q: Poly) -> Poly:
    if p.basis is not q.basis:
        raise BasisMismatch(
            f"Cannot add {p.basis.value} and {q.basis.value} polynomials"
        )
    size = max(len(p.coeffs), len(q.coeffs))
    return Poly(p.basis, tuple(p.coefficient(k) + q.coefficient(k) for k in range(size)))


def poly_scale(p: Poly, factor: Rational) -> Poly:
    factor = Fraction(factor)
    return Poly(p.basis, tuple(c * factor for c in p.coeffs))


def poly_arith(p: Poly, operand: Union[Poly, Rational], op: str) -> Poly:
    """Coefficient-wise 'add' (same basis) or 'scale' (by a rational)."""
    if op == "add":
        if not isinstance(operand, Poly):
            raise DomainError("Addition needs a polynomial operand")
        return poly_add(p, operand)
    if op == "scale":
        if isinstance(operand, Poly):
            raise DomainError("Scaling needs a rational operand")
        return poly_scale(p, operand)
    raise DomainError(f"Unknown polynomial operation: {op}")


def poly_mul(p: Poly, q: Poly) -> Poly:
    """Product of two power-basis polynomials."""
    if p.basis is not Basis.POWER or q.basis is not Basis.POWER:
        raise BasisMismatch("Multiplication is only defined in the power basis")
    if p.is_zero or q.is_zero:
        return Poly.power(())
    coeffs = [Fraction(0)] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        for j, b in enumerate(q.coeffs):
            coeffs[i + j] += a * b
    return Poly.power(coeffs)


def poly_derivative(p: Poly) -> Poly:
    if p.basis is not Basis.POWER:
        raise BasisMismatch("Differentiation is only defined in the power basis")
    return Poly.power(k * c for k, c in enumerate(p.coeffs) if k > 0)


def poly_shift(p: Poly, shift: Rational) -> Poly:
    """Power-basis coefficients of t -> P(t + shift), by repeated synthetic division."""
    if p.basis is not Basis.POWER:
        raise BasisMismatch("Shifting is only defined in the power basis")
    coeffs = list(p.coeffs)
    shift = Fraction(shift)
    size = len(coeffs)
    for i in range(size):
        for j in range(size - 2, i - 1, -1):
            coeffs[j] += shift * coeffs[j + 1]
    return Poly.power(coeffs)
