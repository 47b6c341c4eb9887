"""
Parameter sweeps over p and golden-section refinement of their minima.
"""

from __future__ import annotations

import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import GOLDEN_TOLERANCE, MINIMIZER_DIGITS, SWEEP_MODES
from core.competition import closed_form_race
from core.errors import InvalidInputError
from core.patterns import Pattern, ProbParams
from utils.logger import get_logger

logger = get_logger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2

MODE_SIZES = {"duel": 2, "trio": 3}


@dataclass(frozen=True)
class SweepRow:
    p: Fraction
    values: dict[str, Fraction]


@dataclass(frozen=True)
class MinimumResult:
    column: str
    p_grid: Fraction
    p_star: float
    value: float


def sweep_columns(mode: str) -> list[str]:
    """Fixed column order: win1..winN, then duration for trios."""
    n = MODE_SIZES[mode]
    columns = [f"win{i}" for i in range(1, n + 1)]
    if mode == "trio":
        columns.append("duration")
    return columns


def check_sweep_args(mode: str, patterns: Sequence[Pattern], grid: int) -> None:
    """Raise InvalidInputError unless mode, pattern count and grid fit together."""
    if mode not in SWEEP_MODES:
        raise InvalidInputError(f"mode must be one of {', '.join(SWEEP_MODES)}")
    if len(patterns) != MODE_SIZES[mode]:
        raise InvalidInputError(f"{mode} needs exactly {MODE_SIZES[mode]} patterns")
    if grid < 2:
        raise InvalidInputError("grid must be at least 2")


def evaluate(mode: str, patterns: Sequence[Pattern], p: Fraction) -> dict[str, Fraction]:
    """Exact column values at one p, from the closed forms in the expected values."""
    result = closed_form_race(patterns, ProbParams(p))
    values = {f"win{i}": value for i, value in result.win_prob.items()}
    if mode == "trio":
        values["duration"] = result.expected_duration
    return values


def _row(mode: str, patterns: Sequence[Pattern], p: Fraction) -> SweepRow:
    return SweepRow(p=p, values=evaluate(mode, patterns, p))


def sweep(mode: str, patterns: Sequence[Pattern], grid: int, workers: int = 1) -> list[SweepRow]:
    """Rows at p = i/(grid+1), i = 1..grid, in ascending p."""
    check_sweep_args(mode, patterns, grid)
    ps = [Fraction(i, grid + 1) for i in range(1, grid + 1)]
    logger.debug("sweeping %s over %d points with %d worker(s)", mode, grid, workers)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_row, [mode] * grid, [tuple(patterns)] * grid, ps))
    return [_row(mode, patterns, p) for p in ps]


def golden_section(f: Callable[[float], float], a: float, b: float, tol: float = GOLDEN_TOLERANCE) -> tuple[float, float]:
    """
    Golden-section search.

    Given a function f with a single local minimum in the interval [a,b],
    returns a subinterval [c,d] that contains the minimum with d-c <= tol.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        return a, b

    # Required steps to achieve tolerance
    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)

    for _ in range(n - 1):
        if yc < yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)

    if yc < yd:
        return a, d
    return c, b


def find_minimum(
    mode: str,
    patterns: Sequence[Pattern],
    column: str,
    grid: int,
    rows: list[SweepRow] | None = None,
) -> MinimumResult:
    """Grid minimizer of a column, refined by golden-section search on decimal values."""
    check_sweep_args(mode, patterns, grid)
    if column not in sweep_columns(mode):
        raise InvalidInputError(f"unknown column {column!r} for {mode}")
    rows = rows if rows is not None else sweep(mode, patterns, grid)
    best = min(range(len(rows)), key=lambda i: rows[i].values[column])

    half_step = 1 / (2 * (grid + 1))
    lo = max(float(rows[best].p) - 2 * half_step, half_step)
    hi = min(float(rows[best].p) + 2 * half_step, 1 - half_step)

    def objective(x: float) -> float:
        return float(evaluate(mode, patterns, Fraction(x))[column])

    a, b = golden_section(objective, lo, hi)
    p_star = (a + b) / 2
    return MinimumResult(
        column=column,
        p_grid=rows[best].p,
        p_star=round(p_star, MINIMIZER_DIGITS),
        value=objective(p_star),
    )
