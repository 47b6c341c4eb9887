from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest

from conftest import GRID, TRIO, pats
from core.errors import InvalidInputError, PatternSetError
from core.oracle import absorption, build_automaton, finite_horizon, start_state_after
from core.patterns import Pattern, ProbParams, head_start_initials, word_probability
from core.renewal_gf import head_mean_from_correlation, mean_from_correlation

THIRD = ProbParams(Fraction(1, 3))


def _enumerated_wins(patterns, params: ProbParams, n_max: int) -> dict[int, list[Fraction]]:
    """P(pattern i completes first, at trial n) by enumerating every length-n_max string."""
    wins = {i: [Fraction(0)] * (n_max + 1) for i in range(1, len(patterns) + 1)}
    for letters in product("SF", repeat=n_max):
        text = "".join(letters)
        for n in range(1, n_max + 1):
            done = [i for i, w in enumerate(patterns, 1) if text[:n].endswith(w.symbols)]
            if done:
                wins[done[0]][n] += word_probability(text, params)
                break
    return wins


class TestAutomaton:
    def test_single_symbol(self):
        automaton = build_automaton(pats("S"))
        assert automaton.states == ("",)
        assert automaton.transitions[""] == {"S": "S", "F": ""}

    def test_states_are_proper_prefixes(self):
        assert set(build_automaton(pats("SSFFS")).states) == {"", "S", "SS", "SSF", "SSFF"}

    def test_failure_links(self):
        automaton = build_automaton(pats("SSFFS"))
        assert automaton.transitions["SS"]["S"] == "SS"
        assert automaton.transitions["SSFF"]["F"] == ""
        assert automaton.transitions["SSFF"]["S"] == "SSFFS"
        assert automaton.is_absorbing("SSFFS")
        assert automaton.winner("SSFFS") == 1

    def test_rejects_invalid_sets(self):
        with pytest.raises(PatternSetError):
            build_automaton(pats("SS", "SSF"))

    def test_start_after_head(self):
        automaton = build_automaton(pats("SSFFS"))
        assert start_state_after(automaton, Pattern("FSFSSF")) == "SSF"

    def test_head_that_completes_a_pattern(self):
        automaton = build_automaton(pats("SSF"))
        with pytest.raises(InvalidInputError):
            start_state_after(automaton, Pattern("SSFF"))


class TestAbsorption:
    @pytest.mark.parametrize("p", GRID)
    def test_ssffs_mean_on_the_grid(self, p):
        params = ProbParams(p)
        p_, q_ = params.p, params.q
        automaton = build_automaton(pats("SSFFS"))
        expected = (1 + p_ ** 2 * q_ ** 2) / (p_ ** 3 * q_ ** 2)
        assert absorption(automaton, automaton.start, params).expected_steps == expected

    def test_single_symbol(self):
        automaton = build_automaton(pats("S"))
        assert absorption(automaton, automaton.start, THIRD).expected_steps == 3

    def test_headline_values(self, half):
        automaton = build_automaton(pats("SSFFS"))
        assert absorption(automaton, automaton.start, half).expected_steps == 34

        automaton = build_automaton(pats("SSFFS", "FSFSSF"))
        assert absorption(automaton, automaton.start, half).win_prob[1] == Fraction(29, 44)

        automaton = build_automaton(pats(*TRIO))
        result = absorption(automaton, automaton.start, half)
        assert result.win_prob[1] == Fraction(23, 68)
        assert result.expected_steps == Fraction(571, 34)
        assert sum(result.win_prob.values()) == 1

    def test_single_pattern_matches_correlation_mean(self):
        for params in (THIRD, ProbParams(Fraction(7, 10))):
            for m in range(1, 9):
                for letters in product("SF", repeat=m):
                    w = Pattern("".join(letters))
                    automaton = build_automaton([w])
                    assert absorption(automaton, automaton.start, params).expected_steps == mean_from_correlation(w, params)

    def test_head_start_matches_correlation_mean(self):
        for w, head in [("SSFFS", "SSF"), ("FSFSSF", "SSFFS"), ("FSSSF", "FSFSSF"), ("SSSS", "SSS")]:
            w, head = Pattern(w), Pattern(head)
            automaton = build_automaton([w])
            result = absorption(automaton, start_state_after(automaton, head), THIRD)
            assert result.expected_steps == head_mean_from_correlation(w, head, THIRD)

    def test_unknown_start(self, half):
        automaton = build_automaton(pats("SSF"))
        with pytest.raises(InvalidInputError):
            absorption(automaton, "FF", half)


class TestFiniteHorizon:
    def test_first_hit_of_ssffs(self, half):
        automaton = build_automaton(pats("SSFFS"))
        horizon = finite_horizon(automaton, automaton.start, half, 5)
        assert horizon[1] == [0, 0, 0, 0, 0, Fraction(1, 32)]

    def test_matches_enumeration(self, half):
        patterns = pats(*TRIO)
        for params in (half, THIRD):
            automaton = build_automaton(patterns)
            assert finite_horizon(automaton, automaton.start, params, 12) == _enumerated_wins(patterns, params, 12)

    def test_probabilities_accumulate_below_one(self, half):
        automaton = build_automaton(pats(*TRIO))
        horizon = finite_horizon(automaton, automaton.start, half, 40)
        running = Fraction(0)
        for n in range(41):
            step = sum(horizon[i][n] for i in (1, 2, 3))
            assert step >= 0
            running += step
            assert running <= 1
        assert all(horizon[i][n] == 0 for i in (1, 2, 3) for n in range(5))

    def test_head_start_initials_are_early_first_hits(self):
        for w, head in [("SSFFS", "SSF"), ("SSSS", "SSS"), ("FSSFF", "FSSF")]:
            w, head = Pattern(w), Pattern(head)
            automaton = build_automaton([w])
            horizon = finite_horizon(automaton, start_state_after(automaton, head), THIRD, w.length - 1)
            initials = head_start_initials(w, head, THIRD).values
            assert horizon[1][1:] == [initials[j] for j in range(1, w.length)]
