"""Shared fixtures for the penney_race test suite."""

from __future__ import annotations

from fractions import Fraction

import pytest

from core.patterns import Pattern, ProbParams

# p = i/22, i = 1..21
GRID = [Fraction(i, 22) for i in range(1, 22)]

TRIO = ("SSFFS", "FSFSSF", "FSSSF")


def pats(*texts: str) -> tuple[Pattern, ...]:
    return tuple(Pattern(t) for t in texts)


@pytest.fixture
def half() -> ProbParams:
    return ProbParams(Fraction(1, 2))


@pytest.fixture
def trio_patterns() -> tuple[Pattern, ...]:
    return pats(*TRIO)
