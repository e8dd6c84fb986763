"""Deterministic report rows and JSON/CSV rendering for the CLI.

Numbers are rendered as decimal strings at the full working precision of
the value, never as binary floats, so identical invocations produce
byte-identical reports.
"""

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

import gmpy2
from gmpy2 import mpfr, mpq

TOOL_VERSION = "0.1.0"

__all__ = ["TOOL_VERSION", "ReportRow", "decimal_str", "complex_str", "render_json", "render_csv"]


def decimal_str(x):
    """Scientific-notation decimal string carrying the value's full precision."""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, (Fraction, mpq)):
        return str(Fraction(x.numerator, x.denominator))
    if isinstance(x, float):
        x = mpfr(x, 53)
    if not gmpy2.is_finite(x):
        raise ValueError(f"cannot render non-finite value {x!r}")
    if x == 0:
        return "0"
    ndigits = max(2, math.ceil(x.precision * math.log10(2)))
    digits, exp, _ = gmpy2.digits(x, 10, ndigits)
    sign, mant = ("-", digits[1:]) if digits.startswith("-") else ("", digits)
    return f"{sign}{mant[0]}.{mant[1:]}e{exp - 1:+d}"


def complex_str(z):
    """Rectangular form with both parts rendered by decimal_str."""
    re, im = mpfr(z.real), mpfr(z.imag)
    joiner = "-" if im < 0 else "+"
    return f"{decimal_str(re)}{joiner}{decimal_str(abs(im))}i"


@dataclass(frozen=True)
class ReportRow:
    """One experiment result: echoed inputs, the value, optional comparison."""

    inputs: Mapping[str, str]
    value: str
    reference: Optional[str] = None
    abs_error: Optional[str] = None
    extra: Mapping[str, str] = field(default_factory=dict)

    def to_obj(self):
        obj = {"inputs": dict(self.inputs), "value": self.value}
        if self.reference is not None:
            obj["reference"] = self.reference
        if self.abs_error is not None:
            obj["abs_error"] = self.abs_error
        obj.update(self.extra)
        return obj


def render_json(config, rows):
    doc = {
        "tool_version": TOOL_VERSION,
        "config": dict(config),
        "rows": [row.to_obj() for row in rows],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def render_csv(config, rows):
    """Plot-ready flat table; config is identified by column order alone."""
    input_keys = sorted({key for row in rows for key in row.inputs})
    extra_keys = sorted({key for row in rows for key in row.extra})
    header = input_keys + ["value", "reference", "abs_error"] + extra_keys
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        record = [row.inputs.get(key, "") for key in input_keys]
        record += [row.value, row.reference or "", row.abs_error or ""]
        record += [row.extra.get(key, "") for key in extra_keys]
        writer.writerow(record)
    return buf.getvalue()
