from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import TRIO, pats
from core.errors import InvalidInputError, PatternSetError
from core.patterns import ProbParams
from core.verification import VerificationReport, verify


def test_trio_at_half(half):
    report = verify(pats(*TRIO), half, 30)
    assert report.ok, report.differences
    assert any(label.startswith("mu(") for label in report.passed)
    assert any("given" in label for label in report.passed)


@pytest.mark.parametrize("p", [Fraction(1, 3), Fraction(7, 10)])
def test_duel_off_half(p):
    report = verify(pats("SSFFS", "FSFSSF"), ProbParams(p), 20)
    assert report.ok, report.differences


def test_report_collects_differences():
    report = VerificationReport()
    report.compare("same", a=Fraction(1), b=Fraction(1))
    report.compare("different", a=Fraction(1), b=Fraction(2))
    assert report.passed == ["same"]
    assert report.differences == ["different: a=1, b=2"]
    assert not report.ok


def test_invalid_sets(half):
    with pytest.raises(PatternSetError):
        verify(pats("SS", "SSF"), half, 10)
    with pytest.raises(InvalidInputError):
        verify(pats("SSS", "SFS", "FSS", "FFS"), half, 10)
