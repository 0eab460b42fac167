"""Data models for Facsum."""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterable, Optional, Tuple, Union

from facsum.exceptions import DomainError, ValidationError
from facsum.utils import format_number

Rational = Union[int, Fraction]
Scalar = Union[int, Fraction, float]
Params = Tuple[Tuple[str, str], ...]


class Basis(Enum):
    """Polynomial basis tags."""

    POWER = "power"
    RISING = "rising"
    FALLING = "falling"


class SequenceKind(Enum):
    """Triangles of the recurrence table."""

    BINOMIAL = "binomial"
    STIRLING1 = "stirling1"
    STIRLING2 = "stirling2"
    RSTIRLING1 = "rstirling1"
    RSTIRLING2 = "rstirling2"

    @property
    def base_kind(self) -> "SequenceKind":
        """The plain triangle whose recurrence this kind shares."""
        if self is SequenceKind.RSTIRLING1:
            return SequenceKind.STIRLING1
        if self is SequenceKind.RSTIRLING2:
            return SequenceKind.STIRLING2
        return self

    @property
    def accepts_r(self) -> bool:
        return self in (SequenceKind.RSTIRLING1, SequenceKind.RSTIRLING2)


class WeightKind(Enum):
    """Weights applied to the k-th term of a row sum."""

    POWER = "power"
    RISING = "rising"


class TransformOp(Enum):
    RFT = "rft"
    FFT = "fft"


class OutputFormat(Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


@dataclass(frozen=True)
class Poly:
    """Basis-tagged polynomial with exact rational coefficients.

    coeffs[k] multiplies the k-th element of the basis. Trailing zeros are
    stripped on construction, so the zero polynomial is the empty tuple.
    """

    basis: Basis
    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        values = [Fraction(c) for c in self.coeffs]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    @classmethod
    def power(cls, coeffs: Iterable[Scalar]) -> "Poly":
        return cls(Basis.POWER, tuple(coeffs))

    @classmethod
    def rising(cls, coeffs: Iterable[Scalar]) -> "Poly":
        return cls(Basis.RISING, tuple(coeffs))

    @classmethod
    def falling(cls, coeffs: Iterable[Scalar]) -> "Poly":
        return cls(Basis.FALLING, tuple(coeffs))

    @property
    def degree(self) -> Optional[int]:
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> Fraction:
        """Coefficient of the k-th basis element (zero past the degree)."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def reinterpret(self, basis: Basis) -> "Poly":
        """Same coefficients attached to another basis."""
        return Poly(basis, self.coeffs)


@dataclass(frozen=True)
class SeqTable:
    """Snapshot of a memoized triangle, rows 0..len(rows)-1."""

    kind: SequenceKind
    r: int
    rows: Tuple[Tuple[int, ...], ...]

    def entry(self, n: int, k: int) -> int:
        if n < 0 or k < 0 or n >= len(self.rows) or k > n:
            return 0
        return self.rows[n][k]


@dataclass(frozen=True)
class AffineFn:
    """(n, k) -> alpha*n + beta*k + gamma."""

    alpha: Fraction = Fraction(0)
    beta: Fraction = Fraction(0)
    gamma: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def __call__(self, n: int, k: int) -> Fraction:
        return self.alpha * n + self.beta * k + self.gamma

    @classmethod
    def constant(cls, value: Rational) -> "AffineFn":
        return cls(gamma=value)


@dataclass(frozen=True)
class SuperRecurrence:
    """A_{n,k} = sum_i a_i(n,k) A_{n-1,k-i} seeded by A_{n0,n0} = base_value.

    The two-term case has coeffs == (f, g).
    """

    coeffs: Tuple[AffineFn, ...]
    lower_bound: int = 0
    base_value: int = 1
    name: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) < 2:
            raise DomainError("A super-recurrence needs at least two coefficient functions")
        if self.lower_bound < 0:
            raise DomainError(f"Lower bound must be non-negative, got {self.lower_bound}")

    @property
    def order(self) -> int:
        """m, the number of backward column steps."""
        return len(self.coeffs) - 1

    @property
    def is_two_term(self) -> bool:
        return self.order == 1

    @property
    def f(self) -> AffineFn:
        return self.coeffs[0]

    @property
    def g(self) -> AffineFn:
        return self.coeffs[1]


@dataclass(frozen=True)
class ReductionTrace:
    """Coefficient vectors c_{s,.}(n) for s = 1..n-n0.

    steps[s-1][i] is the coefficient of A_{n-s, n0+i}.
    """

    lower_bound: int
    steps: Tuple[Tuple[Fraction, ...], ...]
    final_value: Fraction


@dataclass(frozen=True)
class TransformKind:
    op: TransformOp
    power: int = 1

    def __post_init__(self):
        if self.op is TransformOp.FFT and self.power != 1:
            raise ValidationError("The falling factorial transform only supports power 1")


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule for the weight t^alpha e^-t on (0, inf)."""

    alpha: float
    nodes: Tuple[float, ...]
    weights: Tuple[float, ...]
    order: int


def _relative_error(exact: float, numeric: float) -> Tuple[float, float]:
    abs_error = abs(numeric - exact)
    rel_error = abs_error / abs(exact) if exact != 0 else abs_error
    return abs_error, rel_error


@dataclass(frozen=True)
class VerifyReport:
    """Exact-versus-numeric comparison for one check."""

    label: str
    params: Params
    exact_value: Union[Fraction, float]
    numeric_value: float
    abs_error: float
    rel_error: float
    passed: bool
    tolerance: float

    @classmethod
    def compare(
        cls,
        label: str,
        params: Params,
        exact_value: Union[Fraction, float],
        numeric_value: float,
        tolerance: float,
    ) -> "VerifyReport":
        """Build a report; passes on relative error (absolute when exact is zero)."""
        abs_error, rel_error = _relative_error(float(exact_value), float(numeric_value))
        return cls(
            label=label,
            params=params,
            exact_value=exact_value,
            numeric_value=float(numeric_value),
            abs_error=abs_error,
            rel_error=rel_error,
            passed=rel_error <= tolerance,
            tolerance=tolerance,
        )

    def to_record(self) -> Dict[str, Any]:
        return {
            "id": self.label,
            "params": dict(self.params),
            "exact": format_number(self.exact_value),
            "numeric": format_number(self.numeric_value),
            "abs_error": self.abs_error,
            "rel_error": self.rel_error,
            "passed": self.passed,
            "printed_variant": None,
            "note": "",
        }


@dataclass(frozen=True)
class IdentityResult:
    """Exact comparison of both sides of an identity."""

    identity_id: str
    parameters: Params
    lhs: Fraction
    rhs: Fraction
    printed_variant_lhs: Optional[Fraction]
    passed: bool
    note: str = ""

    @classmethod
    def compare(
        cls,
        identity_id: str,
        parameters: Params,
        lhs: Rational,
        rhs: Rational,
        printed_variant_lhs: Optional[Rational] = None,
        note: str = "",
    ) -> "IdentityResult":
        lhs, rhs = Fraction(lhs), Fraction(rhs)
        variant = Fraction(printed_variant_lhs) if printed_variant_lhs is not None else None
        notes = [note] if note else []
        if variant is not None and variant != lhs:
            notes.append(
                f"printed index gives {format_number(variant)}, expected {format_number(lhs)}"
            )
        return cls(
            identity_id=identity_id,
            parameters=parameters,
            lhs=lhs,
            rhs=rhs,
            printed_variant_lhs=variant,
            passed=lhs == rhs,
            note="; ".join(notes),
        )

    @property
    def has_discrepancy(self) -> bool:
        return self.printed_variant_lhs is not None and self.printed_variant_lhs != self.lhs

    def to_record(self) -> Dict[str, Any]:
        difference = abs(self.lhs - self.rhs)
        return {
            "id": self.identity_id,
            "params": dict(self.parameters),
            "exact": format_number(self.lhs),
            "numeric": format_number(self.rhs),
            "abs_error": float(difference),
            "rel_error": float(difference / abs(self.lhs)) if self.lhs else float(difference),
            "passed": self.passed,
            "printed_variant": (
                format_number(self.printed_variant_lhs)
                if self.printed_variant_lhs is not None
                else None
            ),
            "note": self.note,
        }


@dataclass(frozen=True)
class SuiteConfig:
    """Parameter grids for the exact identity suite."""

    n_values: Tuple[int, ...] = ()
    k_values: Tuple[int, ...] = ()
    x_values: Tuple[Fraction, ...] = ()
    m_values: Tuple[int, ...] = ()
    printed_variants: bool = True

    @classmethod
    def grid(
        cls,
        n_max: int,
        k_max: int,
        x_values: Iterable[Rational],
        m_max: int = 6,
        printed_variants: bool = True,
    ) -> "SuiteConfig":
        return cls(
            n_values=tuple(range(n_max + 1)),
            k_values=tuple(range(k_max + 1)),
            x_values=tuple(Fraction(x) for x in x_values),
            m_values=tuple(range(1, m_max + 1)),
            printed_variants=printed_variants,
        )


@dataclass(frozen=True)
class IntegralSuiteConfig:
    """Parameter grids for the quadrature and series suite."""

    n_values: Tuple[int, ...] = ()
    x_values: Tuple[float, ...] = ()
    factorial_ratio_n_values: Tuple[int, ...] = ()
    dobinski_n_values: Tuple[int, ...] = ()
    quadrature_alphas: Tuple[float, ...] = ()
    tolerance: float = 1e-10
    series_tolerance: float = 1e-12
    max_terms: int = 500
    sample_polys: Tuple[Poly, ...] = ()
