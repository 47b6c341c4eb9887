"""
Formula-free ground truth: an absorbing Markov chain on the prefix automaton.

States are the longest suffix of the emitted text that is a prefix of some
pattern (the Aho-Corasick goto/failure closure, built directly since the
alphabet has two letters). Completing a pattern absorbs the chain. Nothing
here uses correlation polynomials, so agreement with the generating-function
engine is independent evidence.
"""

from __future__ import annotations

import os
import sys
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import FAILURE, SUCCESS
from core.errors import InvalidInputError, SingularSystemError
from core.patterns import Pattern, ProbParams, validate_pattern_set
from utils.logger import get_logger

logger = get_logger(__name__)

ALPHABET = (SUCCESS, FAILURE)


@dataclass(frozen=True)
class PrefixAutomaton:
    """
    Transient states are proper prefixes (as strings, "" is the start).

    transitions[state][symbol] is either a transient state or the text of the
    completed pattern; absorbing maps pattern index (1-based) to that text.
    """

    patterns: tuple[Pattern, ...]
    states: tuple[str, ...]
    transitions: dict[str, dict[str, str]]
    absorbing: dict[int, str]

    @property
    def start(self) -> str:
        return ""

    def is_absorbing(self, state: str) -> bool:
        return state in self._winner_by_text

    @cached_property
    def _winner_by_text(self) -> dict[str, int]:
        return {text: i for i, text in self.absorbing.items()}

    def winner(self, state: str) -> int:
        return self._winner_by_text[state]


@dataclass(frozen=True)
class AbsorptionResult:
    win_prob: dict[int, Fraction]
    expected_steps: Fraction


def _step(text: str, patterns: Sequence[Pattern], prefixes: set[str]) -> str:
    for w in patterns:
        if text.endswith(w.symbols):
            return w.symbols
    for start in range(len(text) + 1):
        if text[start:] in prefixes:
            return text[start:]
    return ""


def build_automaton(patterns: Sequence[Pattern]) -> PrefixAutomaton:
    """Prefix automaton over all proper prefixes, with completed patterns absorbing."""
    patterns = tuple(patterns)
    if not patterns:
        raise InvalidInputError("at least one pattern is required")
    if len(patterns) > 1:
        validate_pattern_set(patterns)
    prefixes = {w.symbols[:k] for w in patterns for k in range(w.length)}

    states: list[str] = []
    transitions: dict[str, dict[str, str]] = {}
    queue = deque([""])
    seen = {""}
    while queue:
        state = queue.popleft()
        states.append(state)
        transitions[state] = {}
        for symbol in ALPHABET:
            nxt = _step(state + symbol, patterns, prefixes)
            transitions[state][symbol] = nxt
            if nxt in prefixes and nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)

    absorbing = {i: w.symbols for i, w in enumerate(patterns, 1)}
    logger.debug("automaton for %s: %d transient states", [str(w) for w in patterns], len(states))
    return PrefixAutomaton(
        patterns=patterns,
        states=tuple(states),
        transitions=transitions,
        absorbing=absorbing,
    )


def start_state_after(automaton: PrefixAutomaton, head: Pattern) -> str:
    """Feed head from the start state; absorbing on the way means the head is invalid."""
    state = automaton.start
    for symbol in head.symbols:
        state = automaton.transitions[state][symbol]
        if automaton.is_absorbing(state):
            raise InvalidInputError(
                f"head {head} completes pattern {state} while being fed to the automaton"
            )
    return state


def _gauss_jordan(matrix: list[list[Fraction]], rhs: list[list[Fraction]]) -> list[list[Fraction]]:
    """
    Solve matrix * X = rhs for X exactly.

    Row pivoting picks the nonzero entry with the smallest numerator/denominator
    size in the column, which keeps the Fraction entries compact.
    """
    n = len(matrix)
    width = len(rhs[0]) if rhs else 0
    rows = [list(matrix[i]) + list(rhs[i]) for i in range(n)]

    def size(x: Fraction) -> int:
        return x.numerator.bit_length() + x.denominator.bit_length()

    for col in range(n):
        candidates = [r for r in range(col, n) if rows[r][col] != 0]
        if not candidates:
            raise SingularSystemError(f"singular absorption system at column {col}")
        pivot = min(candidates, key=lambda r: size(rows[r][col]))
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return [row[n:n + width] for row in rows]


def _solve(automaton: PrefixAutomaton, params: ProbParams) -> dict[str, tuple[list[Fraction], Fraction]]:
    """(I - Q) [B | t] = [R | 1] over all transient states."""
    index = {state: i for i, state in enumerate(automaton.states)}
    n = len(index)
    k = len(automaton.absorbing)
    matrix = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rhs = [[Fraction(0)] * k + [Fraction(1)] for _ in range(n)]
    for state, i in index.items():
        for symbol, nxt in automaton.transitions[state].items():
            weight = params.weight(symbol)
            if automaton.is_absorbing(nxt):
                rhs[i][automaton.winner(nxt) - 1] += weight
            else:
                matrix[i][index[nxt]] -= weight
    solution = _gauss_jordan(matrix, rhs)
    return {state: (solution[i][:k], solution[i][k]) for state, i in index.items()}


def absorption(automaton: PrefixAutomaton, start: str, params: ProbParams) -> AbsorptionResult:
    """Exact win probabilities and expected number of trials from a transient start."""
    if start not in automaton.transitions:
        raise InvalidInputError(f"{start!r} is not a transient state")
    probs, steps = _solve(automaton, params)[start]
    return AbsorptionResult(
        win_prob={i + 1: value for i, value in enumerate(probs)},
        expected_steps=steps,
    )


def finite_horizon(
    automaton: PrefixAutomaton, start: str, params: ProbParams, n_max: int
) -> dict[int, list[Fraction]]:
    """
    P(pattern i wins exactly at trial n) for n = 0..n_max.

    Forward dynamic programming over the occupancy vector of transient states.
    """
    if start not in automaton.transitions:
        raise InvalidInputError(f"{start!r} is not a transient state")
    wins = {i: [Fraction(0)] * (n_max + 1) for i in automaton.absorbing}
    occupancy = {start: Fraction(1)}
    for n in range(1, n_max + 1):
        following: dict[str, Fraction] = {}
        for state, mass in occupancy.items():
            for symbol, nxt in automaton.transitions[state].items():
                weight = mass * params.weight(symbol)
                if automaton.is_absorbing(nxt):
                    wins[automaton.winner(nxt)][n] += weight
                else:
                    following[nxt] = following.get(nxt, Fraction(0)) + weight
        occupancy = following
    return wins


if __name__ == "__main__":
    # Test execution
    params = ProbParams(Fraction(1, 2))
    trio_patterns = [Pattern("SSFFS"), Pattern("FSFSSF"), Pattern("FSSSF")]
    automaton = build_automaton(trio_patterns)
    result = absorption(automaton, automaton.start, params)
    print(f"States: {len(automaton.states)}")
    print(f"Win probabilities: {result.win_prob}")
    print(f"Expected trials: {result.expected_steps}")
