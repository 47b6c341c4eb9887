"""
Exact parsing of p and rendering of results for the command line.
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import DECIMAL_DIGITS
from core.errors import InvalidInputError


def parse_probability(text: str) -> Fraction:
    """
    Parse "a/b" or a finite decimal exactly ("0.2495" -> 499/2000).

    Raises:
        InvalidInputError: unparsable text or p outside (0, 1)
    """
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InvalidInputError(f"cannot parse p from {text!r}") from None
    if not 0 < value < 1:
        raise InvalidInputError("p must be in (0,1)")
    return value


def to_decimal(value: Fraction, digits: int = DECIMAL_DIGITS) -> str:
    """Decimal rendering rounded to `digits` significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        number = Decimal(value.numerator) / Decimal(value.denominator)
    return format(number, "f")


def exact_pair(value: Fraction) -> dict[str, str]:
    """The {"exact", "decimal"} pair used in JSON results."""
    return {"exact": str(value), "decimal": to_decimal(value)}


@dataclass
class OutputRecord:
    """Echoed inputs, results, provenance, plus a flat table for csv/human."""

    command: str
    inputs: dict
    results: dict
    provenance: list[str]
    header: list[str] = field(default_factory=list)
    rows: list[list[str]] = field(default_factory=list)

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "provenance": self.provenance,
        }
        return json.dumps(payload, indent=2)

    def to_csv(self) -> str:
        return render_csv(self.header, self.rows)

    def to_human(self) -> str:
        lines = ["=" * 50, f"{self.command}: " + ", ".join(
            f"{key}={value}" for key, value in self.inputs.items() if value is not None
        ), "=" * 50]
        table = [self.header] + self.rows if self.header else self.rows
        widths = [max(len(row[c]) for row in table) for c in range(len(table[0]))] if table else []
        for row in table:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        lines.append(f"route: {'; '.join(self.provenance)}")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        """Render as json, csv or the human table."""
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        return self.to_human()


def render_csv(header: list[str], rows: list[list[str]]) -> str:
    """CSV text with LF line endings and no trailing newline."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue().rstrip("\n")
