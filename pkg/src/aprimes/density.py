"""Density predictors and the count comparison table."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Sequence

from .errors import DomainError, UsageError

LI3_RTOL = 1e-9


def _simpson(f, a, b, tol, max_intervals=1 << 20):
    """Adaptive Simpson with Richardson correction; absolute tolerance ``tol``."""
    def simpson(fa, fm, fb, a, b):
        return (b - a) / 6 * (fa + 4 * fm + fb)

    fa, fb, fm = f(a), f(b), f((a + b) / 2)
    whole = simpson(fa, fm, fb, a, b)
    stack = [(a, b, fa, fm, fb, whole, tol)]
    total = 0.0
    parts = []
    while stack:
        a, b, fa, fm, fb, whole, eps = stack.pop()
        m = (a + b) / 2
        lm, rm = (a + m) / 2, (m + b) / 2
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, a, m)
        right = simpson(fm, frm, fb, m, b)
        delta = left + right - whole
        if abs(delta) <= 15 * eps or b - a < 1e-12 * max(1.0, abs(a)):
            parts.append(left + right + delta / 15)
        else:
            stack.append((a, m, fa, flm, fm, left, eps / 2))
            stack.append((m, b, fm, frm, fb, right, eps / 2))
        if len(parts) + len(stack) > max_intervals:
            raise ArithmeticError("adaptive Simpson did not converge")
    return math.fsum(parts)


def _li3_integrand(u: float) -> float:
    return math.exp(u) / u**3


def li3(x: float, rtol: float = LI3_RTOL) -> float:
    """Integral of 1/(log t)**3 over [2, x], via t = e**u.

    Two runs at tolerances differing by a factor 16 must agree to ``rtol``.
    """
    if x < 2:
        raise DomainError(f"li3 needs x >= 2, got {x}")
    if x == 2:
        return 0.0
    a, b = math.log(2.0), math.log(x)
    # crude magnitude for the absolute tolerance; the integrand is increasing past u = 3
    scale = max(_li3_integrand(b), _li3_integrand(a)) * (b - a)
    tol = rtol * scale / 64
    for _ in range(8):
        coarse = _simpson(_li3_integrand, a, b, tol)
        fine = _simpson(_li3_integrand, a, b, tol / 16)
        if abs(fine - coarse) <= rtol * abs(fine) / 4:
            return fine
        tol /= 16
    raise ArithmeticError(f"li3({x}) failed to certify {rtol} relative accuracy")


def main_term(x: float, s_a: float) -> float:
    """Conjectured asymptotic (s_a / 2) * x / (log x)**3."""
    if x <= 1:
        raise DomainError(f"main_term needs x > 1, got {x}")
    return s_a / 2 * x / math.log(x) ** 3


def round_half_away(value: float, places: int = 2) -> Decimal:
    return Decimal(repr(value)).quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP)


@dataclass(frozen=True)
class CountRecord:
    x: int
    count_a: int
    ratio_log3: float
    ratio_li3: float
    log_reference: int | None = None

    def display(self, places: int = 2) -> tuple[str, str]:
        return str(round_half_away(self.ratio_log3, places)), str(round_half_away(self.ratio_li3, places))

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def build_table(limits: Sequence[int], counts: Sequence[int],
                log_reference: int | None = None) -> list[CountRecord]:
    """Ratio columns count / (x / (log x)**3) and count / li3(x) for each row.

    ``log_reference`` freezes the logarithm in the first column at a single
    point instead of each row's own x.
    """
    if len(limits) != len(counts):
        raise UsageError(f"{len(limits)} limits but {len(counts)} counts")
    if any(b <= a for a, b in zip(limits, limits[1:])):
        raise UsageError("limits must be strictly ascending")
    records = []
    for x, c in zip(limits, counts):
        log_x = math.log(log_reference if log_reference is not None else x)
        records.append(CountRecord(int(x), int(c), c / (x / log_x**3), c / li3(x), log_reference))
    return records


TABLE_HEADER = ("x", "count_a", "ratio_log3", "ratio_li3")


def table_csv(records: Sequence[CountRecord]) -> str:
    lines = [",".join(TABLE_HEADER)]
    for rec in records:
        lines.append(",".join((str(rec.x), str(rec.count_a), *rec.display())))
    return "\n".join(lines) + "\n"


def table_text(records: Sequence[CountRecord]) -> str:
    rows = [TABLE_HEADER] + [(str(r.x), str(r.count_a), *r.display()) for r in records]
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    return "\n".join("  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in rows) + "\n"
