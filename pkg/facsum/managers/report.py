"""Report manager for Facsum.

Renders tables, sums, polynomials and verification records to a text stream
as plain text, one-object-per-line JSON or CSV. Output carries no timestamps,
so identical invocations produce identical bytes.
"""

import csv
import json
import logging
from typing import Any, Dict, Iterable, List, Optional, TextIO, Union

from facsum.models import (
    IdentityResult,
    OutputFormat,
    Poly,
    ReductionTrace,
    SeqTable,
    VerifyReport,
)
from facsum.utils import format_number, format_params

Record = Union[VerifyReport, IdentityResult]

RECORD_FIELDS = [
    "id",
    "params",
    "exact",
    "numeric",
    "abs_error",
    "rel_error",
    "passed",
    "printed_variant",
    "note",
]


class ReportManager:
    """Writes command results to a stream in the selected format."""

    def __init__(self, stream: TextIO, output_format: OutputFormat = OutputFormat.TEXT):
        """Initialize the report manager.

        Args:
            stream: Destination for rendered output (usually stdout)
            output_format: text, json or csv
        """
        self.stream = stream
        self.output_format = output_format

    def _line(self, text: str) -> None:
        self.stream.write(text + "\n")

    def _json(self, payload: Dict[str, Any]) -> None:
        self._line(json.dumps(payload))

    def _csv(self):
        return csv.writer(self.stream, lineterminator="\n")

    def write_table(self, table: SeqTable) -> None:
        """Rows 0..n_max of a triangle, exact decimal digits."""
        if self.output_format is OutputFormat.JSON:
            for n, row in enumerate(table.rows):
                self._json({"n": n, "row": list(row)})
        elif self.output_format is OutputFormat.CSV:
            writer = self._csv()
            writer.writerow(["n", "k", "value"])
            for n, row in enumerate(table.rows):
                for k, value in enumerate(row):
                    writer.writerow([n, k, value])
        else:
            for row in table.rows:
                self._line(" ".join(str(value) for value in row))
        logging.debug(f"📋 Wrote {len(table.rows)} rows of {table.kind.value}")

    def write_sum(self, value: Any, trace: Optional[ReductionTrace] = None) -> None:
        """A reduced or weighted sum, optionally followed by the c-vectors."""
        steps = [
            [format_number(c) for c in step] for step in (trace.steps if trace else ())
        ]
        if self.output_format is OutputFormat.JSON:
            payload: Dict[str, Any] = {"value": format_number(value)}
            if trace is not None:
                payload["lower_bound"] = trace.lower_bound
                payload["trace"] = steps
            self._json(payload)
        elif self.output_format is OutputFormat.CSV:
            writer = self._csv()
            writer.writerow(["name", "value"])
            writer.writerow(["sum", format_number(value)])
            for s, step in enumerate(steps, start=1):
                writer.writerow([f"c_{s}", " ".join(step)])
        else:
            self._line(format_number(value))
            for s, step in enumerate(steps, start=1):
                self._line(f"c_{s}: " + " ".join(step))

    def write_poly(self, p: Poly) -> None:
        """Power-basis coefficients, lowest degree first; the zero polynomial is "0"."""
        coeffs = [format_number(c) for c in p.coeffs] or ["0"]
        if self.output_format is OutputFormat.JSON:
            self._json({"basis": p.basis.value, "coeffs": coeffs})
        elif self.output_format is OutputFormat.CSV:
            writer = self._csv()
            writer.writerow(["k", "coefficient"])
            for k, c in enumerate(coeffs):
                writer.writerow([k, c])
        else:
            self._line(",".join(coeffs))

    def write_records(self, records: Iterable[Record]) -> Dict[str, int]:
        """Verification records in order.

        Returns:
            Counts of passed, failed and flagged (printed-index discrepancy) records
        """
        counts = {"passed": 0, "failed": 0, "flagged": 0}
        writer = self._csv() if self.output_format is OutputFormat.CSV else None
        if writer is not None:
            writer.writerow(RECORD_FIELDS)

        for record in records:
            row = record.to_record()
            counts["passed" if row["passed"] else "failed"] += 1
            if row["printed_variant"] is not None and row["note"]:
                counts["flagged"] += 1

            if self.output_format is OutputFormat.JSON:
                self._json(row)
            elif writer is not None:
                writer.writerow(_csv_row(row))
            else:
                self._line(_text_row(row))

        logging.info(
            f"📋 {counts['passed']} passed, {counts['failed']} failed, "
            f"{counts['flagged']} flagged"
        )
        return counts


def _csv_row(row: Dict[str, Any]) -> List[Any]:
    flat = dict(row)
    flat["params"] = format_params(tuple(row["params"].items()))
    flat["abs_error"] = repr(row["abs_error"])
    flat["rel_error"] = repr(row["rel_error"])
    flat["passed"] = "true" if row["passed"] else "false"
    flat["printed_variant"] = row["printed_variant"] or ""
    return [flat[field] for field in RECORD_FIELDS]


def _text_row(row: Dict[str, Any]) -> str:
    parts = [
        "PASS" if row["passed"] else "FAIL",
        row["id"],
        format_params(tuple(row["params"].items())),
        row["exact"],
        row["numeric"],
        f"{row['rel_error']:.3e}",
    ]
    if row["note"]:
        parts.append(f"[{row['note']}]")
    return " ".join(parts)
