"""Core application logic for Facsum."""

import asyncio
import logging
import sys
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from facsum.config import Config
from facsum.exceptions import NoConvergence, ValidationError
from facsum.managers import identities, numerics, reduction, sequences, transforms
from facsum.managers.report import Record, ReportManager
from facsum.models import (
    IntegralSuiteConfig,
    Poly,
    SequenceKind,
    SuiteConfig,
    TransformKind,
    TransformOp,
    WeightKind,
)
from facsum.utils import setup_logging

SUITES = ("integrals", "identities", "all")

# Polynomials exercised by the transform and series checks
SAMPLE_POLYS = (
    Poly.power([1]),
    Poly.power([0, 0, 1]),
    Poly.power([1, -2, 0, 1]),
    Poly.power([Fraction(1, 2), 1, 0, Fraction(-1, 3), 1]),
    Poly.power([0, 1, 15, 25, 10, 1]),
    Poly.power([0] * 8 + [1]),
)


class FacSum:
    """Main application class: wires configuration, logging and managers."""

    def __init__(self, config_path: Optional[str] = None, log_level: Optional[str] = None):
        """Initialize the application.

        Args:
            config_path: Optional INI file overriding the built-in defaults
            log_level: Overrides [general] log_level when given
        """
        self.config = Config(config_path)
        setup_logging(
            self.config.get_path("general", "log_file"),
            log_level or self.config.get("general", "log_level"),
        )
        self.sequences = sequences.default_manager
        self.max_n = self.config.getint("tables", "max_n")
        self.series_tolerance = self.config.getfloat("series", "tolerance")
        self.max_terms = self.config.getint("series", "max_terms")
        self.workers = self.config.getint("verify", "workers")
        logging.debug(f"🧮 Table cap {self.max_n}, {self.workers} verification workers")

    def default_tolerance(self) -> float:
        return self.config.getfloat("verify", "tolerance")

    def _check_r(self, kind: SequenceKind, r: int) -> None:
        if r < 0:
            raise ValidationError(f"r must be non-negative, got {r}")
        if r and not kind.accepts_r:
            raise ValidationError(f"{kind.value} takes no --r; use rstirling1 or rstirling2")

    async def cmd_table(self, report: ReportManager, kind: SequenceKind, n_max: int, r: int = 0) -> int:
        """Render rows 0..n_max of a triangle."""
        self._check_r(kind, r)
        if n_max < 0:
            raise ValidationError(f"--n must be non-negative, got {n_max}")
        if n_max > self.max_n:
            raise ValidationError(f"--n {n_max} exceeds the table cap {self.max_n}")
        table = await asyncio.to_thread(self.sequences.table, kind, n_max, r)
        report.write_table(table)
        return 0

    async def cmd_sum(
        self,
        report: ReportManager,
        kind: SequenceKind,
        n: int,
        n0: Optional[int] = None,
        weight: Optional[WeightKind] = None,
        x: Optional[Fraction] = None,
        r: int = 0,
        trace: bool = False,
    ) -> int:
        """Reduce a row sum, plain or weighted, and render the exact value."""
        self._check_r(kind, r)
        if kind.accepts_r and n0 is not None and n0 != r:
            raise ValidationError(f"{kind.value} rows start at k = r = {r}; --n0 {n0} would drop r")
        rec = reduction.preset(kind, r)
        if weight is None:
            value, reduction_trace = reduction.reduce_sum(rec, n, n0)
            report.write_sum(value, reduction_trace if trace else None)
            return 0
        if x is None:
            raise ValidationError("--weight needs --x")
        if trace:
            logging.warning("⚠️ --trace applies to unweighted sums only; ignoring it")
        if weight is WeightKind.POWER:
            value = reduction.y_power(rec, n, n0, x)
        else:
            value = reduction.y_rising(rec, n, n0, x)
        report.write_sum(value)
        return 0

    async def cmd_transform(
        self, report: ReportManager, op: TransformOp, power: int, coeffs: Sequence[Fraction]
    ) -> int:
        """Apply RFT^power or the FFT to a power-basis polynomial."""
        kind = TransformKind(op, power)
        p = Poly.power(coeffs)
        if kind.op is TransformOp.RFT:
            result = transforms.rft_apply(p, kind.power)
        else:
            result = transforms.fft_apply(p)
        report.write_poly(result)
        return 0

    def integral_config(self, tolerance: float) -> IntegralSuiteConfig:
        return IntegralSuiteConfig(
            n_values=tuple(range(self.config.getint("integrals", "n_max") + 1)),
            x_values=tuple(self.config.get_reals("integrals", "x_values")),
            factorial_ratio_n_values=tuple(range(self.config.getint("integrals", "factorial_ratio_n_max") + 1)),
            dobinski_n_values=tuple(range(self.config.getint("integrals", "dobinski_n_max") + 1)),
            quadrature_alphas=tuple(self.config.get_reals("integrals", "quadrature_alphas")),
            tolerance=tolerance,
            series_tolerance=self.series_tolerance,
            max_terms=self.max_terms,
            sample_polys=SAMPLE_POLYS,
        )

    def identity_config(self) -> SuiteConfig:
        return SuiteConfig.grid(
            n_max=self.config.getint("identities", "n_max"),
            k_max=self.config.getint("identities", "k_max"),
            x_values=self.config.get_rationals("identities", "x_values"),
            printed_variants=self.config.getboolean("identities", "printed_variants"),
        )

    async def cmd_verify(
        self, report: ReportManager, suite: str, tolerance: Optional[float] = None
    ) -> int:
        """Run verification suites; 0 when every check passes, 1 otherwise."""
        if suite not in SUITES:
            raise ValidationError(f"Unknown suite: {suite}")
        tolerance = self.default_tolerance() if tolerance is None else tolerance
        if tolerance <= 0:
            raise ValidationError(f"--tol must be positive, got {tolerance}")

        jobs: List[Callable[[], List[Record]]] = []
        if suite in ("integrals", "all"):
            integral_config = self.integral_config(tolerance)
            jobs.append(lambda: numerics.run_integral_suite(integral_config))
        if suite in ("identities", "all"):
            identity_config = self.identity_config()
            for family in identities.SUITE_FAMILIES:
                jobs.append(lambda family=family: family(identity_config))

        try:
            results = await self._run_jobs(jobs)
        except NoConvergence as e:
            logging.error(f"💥 Verification aborted: {e}")
            print(f"Verification failed: {e}", file=sys.stderr)
            return 1
        records = [record for batch in results for record in batch]
        counts = report.write_records(records)
        if counts["failed"]:
            logging.warning(f"⚠️ {counts['failed']} of {len(records)} checks failed")
            return 1
        logging.info(f"✅ All {len(records)} checks passed")
        return 0

    async def _run_jobs(self, jobs: List[Callable[[], List[Record]]]) -> List[List[Record]]:
        """Run jobs in worker threads; results come back in job order."""
        semaphore = asyncio.Semaphore(self.workers)

        async def run(job: Callable[[], List[Record]]) -> List[Record]:
            async with semaphore:
                return await asyncio.to_thread(job)

        return await asyncio.gather(*(run(job) for job in jobs))
