from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import TRIO, pats
from core.errors import InvalidInputError
from core.sweep import check_sweep_args, evaluate, find_minimum, golden_section, sweep, sweep_columns


def test_columns():
    assert sweep_columns("duel") == ["win1", "win2"]
    assert sweep_columns("trio") == ["win1", "win2", "win3", "duration"]


def test_duel_grid_is_increasing_in_p():
    rows = sweep("duel", pats("SSFFS", "FSFSSF"), 9)
    assert [row.p for row in rows] == [Fraction(i, 10) for i in range(1, 10)]
    wins = [row.values["win1"] for row in rows]
    assert wins == sorted(wins)
    assert all(row.values["win1"] + row.values["win2"] == 1 for row in rows)


def test_trio_row_at_half():
    values = evaluate("trio", pats(*TRIO), Fraction(1, 2))
    assert values["win1"] == Fraction(23, 68)
    assert values["duration"] == Fraction(571, 34)


def test_workers_do_not_change_rows():
    patterns = pats(*TRIO)
    assert sweep("trio", patterns, 7, workers=2) == sweep("trio", patterns, 7)


@pytest.mark.parametrize(
    "mode, patterns, grid",
    [
        ("duel", TRIO, 9),
        ("trio", TRIO[:2], 9),
        ("trio", TRIO, 1),
        ("quartet", TRIO, 9),
    ],
)
def test_bad_arguments(mode, patterns, grid):
    with pytest.raises(InvalidInputError):
        check_sweep_args(mode, pats(*patterns), grid)


def test_unknown_column():
    with pytest.raises(InvalidInputError):
        find_minimum("duel", pats("SSFFS", "FSFSSF"), "duration", 9)


def test_golden_section_on_a_parabola():
    a, b = golden_section(lambda x: (x - 0.3) ** 2, 0.0, 1.0, tol=1e-8)
    assert b - a <= 1e-8
    assert a <= 0.3 <= b


@pytest.mark.slow
def test_trio_win_probability_minimum():
    best = find_minimum("trio", pats(*TRIO), "win1", 999)
    assert 0.2490 <= best.p_star <= 0.2500
    assert abs(best.value - 0.2859) < 5e-5


@pytest.mark.slow
def test_trio_duration_minimum():
    best = find_minimum("trio", pats(*TRIO), "duration", 999)
    assert 0.5791 <= best.p_star <= 0.5801
    assert abs(best.value - 15.88) < 0.01
