"""
Races between two or three patterns.

Win SGFs are assembled from the first-occurrence PGFs F_i (from scratch) and
F_{i|j} (pattern i given that pattern j has just been completed). Every
headline number is computed twice, once as a limit of a rational function
and once from the closed forms in the expected values, and the two must
agree exactly.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from core.errors import DegenerateMeansError, InfiniteLimitError, VerificationMismatch
from core.exact_algebra import InfiniteLimit, RationalFunction, derivative, limit_at_one
from core.oracle import absorption, build_automaton
from core.patterns import Pattern, ProbParams, validate_pattern_set
from core.renewal_gf import MeanTable, head_F, mean, mean_table, scratch_F
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class PgfBundle:
    """F_i and F_{i|j} for a set of patterns, keyed by 1-based index."""

    patterns: tuple[Pattern, ...]
    F: dict[int, RationalFunction]
    Fc: dict[tuple[int, int], RationalFunction]

    def means(self) -> MeanTable:
        mu: dict = {i: _finite_limit(derivative(f)) for i, f in self.F.items()}
        mu.update({key: _finite_limit(derivative(f)) for key, f in self.Fc.items()})
        return MeanTable(patterns=self.patterns, mu=mu)


@dataclass(frozen=True)
class DuelOutcome:
    patterns: tuple[Pattern, Pattern]
    sgf_win: dict[int, RationalFunction]
    win_prob: dict[int, Fraction]
    duration_pgf: RationalFunction
    expected_duration: Fraction
    given: Pattern | None = None


@dataclass(frozen=True)
class TrioOutcome:
    patterns: tuple[Pattern, Pattern, Pattern]
    sgf_win: dict[int, RationalFunction]
    win_prob: dict[int, Fraction]
    duration_pgf: RationalFunction
    expected_duration: Fraction
    means: MeanTable


@dataclass(frozen=True)
class RaceResult:
    patterns: tuple[Pattern, ...]
    win_prob: dict[int, Fraction]
    expected_duration: Fraction | None
    route: str


def _finite_limit(f: RationalFunction) -> Fraction:
    value = limit_at_one(f)
    if isinstance(value, InfiniteLimit):
        raise InfiniteLimitError(f"limit at s = 1 is infinite for {f}")
    return value


def _require_equal(label: str, left: Fraction, right: Fraction) -> None:
    if left != right:
        raise VerificationMismatch(
            f"{label}: {left} != {right}", [f"{label}: limit={left} closed_form={right}"]
        )


def build_pgfs(
    patterns: Sequence[Pattern],
    params: ProbParams,
    heads: Sequence[Pattern] = (),
) -> PgfBundle:
    """
    Scratch PGFs for every pattern and head-start PGFs for every ordered pair.

    Extra heads (e.g. the conditioning pattern of a duel) are appended after
    the competing patterns and receive the next indices; no PGF is built for
    the heads themselves.
    """
    everyone = list(patterns) + list(heads)
    validate_pattern_set(everyone)
    n = len(patterns)
    F = {i: scratch_F(w, params).fn for i, w in enumerate(patterns, 1)}
    Fc = {
        (i, j): head_F(everyone[i - 1], everyone[j - 1], params).fn
        for i, j in permutations(range(1, len(everyone) + 1), 2)
        if i <= n
    }
    return PgfBundle(patterns=tuple(everyone), F=F, Fc=Fc)


def duel_win_prob_closed_form(means: MeanTable, target: int, opponent: int) -> Fraction:
    """(mu_j - mu_i + mu_{i|j}) / (mu_{i|j} + mu_{j|i})."""
    i, j = target, opponent
    mu = means.mu
    den = mu[(i, j)] + mu[(j, i)]
    if den == 0:
        raise DegenerateMeansError("zero denominator in the duel closed form", dict(mu))
    return (mu[j] - mu[i] + mu[(i, j)]) / den


def _duel_sgfs(
    pgfs: PgfBundle, first: RationalFunction, second: RationalFunction
) -> tuple[RationalFunction, RationalFunction]:
    """Solve F_1 = X_1 + X_2 F_{1|2}, F_2 = X_2 + X_1 F_{2|1} with given starting PGFs."""
    F12, F21 = pgfs.Fc[(1, 2)], pgfs.Fc[(2, 1)]
    den = 1 - F12 * F21
    X1 = (first - second * F12) / den
    X2 = (second - first * F21) / den
    return X1, X2


def _duel_outcome(
    pgfs: PgfBundle,
    X1: RationalFunction,
    X2: RationalFunction,
    given: Pattern | None,
) -> DuelOutcome:
    win = {1: _finite_limit(X1), 2: _finite_limit(X2)}
    _require_equal("duel win probabilities sum", win[1] + win[2], Fraction(1))
    H = X1 + X2
    return DuelOutcome(
        patterns=(pgfs.patterns[0], pgfs.patterns[1]),
        sgf_win={1: X1, 2: X2},
        win_prob=win,
        duration_pgf=H,
        expected_duration=_finite_limit(derivative(H)),
        given=given,
    )


def duel(w1: Pattern, w2: Pattern, params: ProbParams) -> DuelOutcome:
    """Two patterns from scratch."""
    pgfs = build_pgfs((w1, w2), params)
    X1, X2 = _duel_sgfs(pgfs, pgfs.F[1], pgfs.F[2])
    outcome = _duel_outcome(pgfs, X1, X2, given=None)
    means = pgfs.means()
    for i, j in ((1, 2), (2, 1)):
        _require_equal(
            f"duel win probability of {pgfs.patterns[i - 1]}",
            outcome.win_prob[i],
            duel_win_prob_closed_form(means, i, j),
        )
    logger.debug("duel %s vs %s at p=%s: %s", w1, w2, params.p, outcome.win_prob)
    return outcome


def duel_given(w1: Pattern, w2: Pattern, given: Pattern, params: ProbParams) -> DuelOutcome:
    """Two patterns, starting right after a completed third pattern."""
    pgfs = build_pgfs((w1, w2), params, heads=(given,))
    X1, X2 = _duel_sgfs(pgfs, pgfs.Fc[(1, 3)], pgfs.Fc[(2, 3)])
    return _duel_outcome(pgfs, X1, X2, given=given)


def win_sgf(pgfs: PgfBundle, target: int, opponents: tuple[int, int]) -> RationalFunction:
    """X_{i{j,k}}(s) from the F's, in the order of opponents given."""
    i, (j, k) = target, opponents
    F, Fc = pgfs.F, pgfs.Fc
    num = (
        F[i] * (1 - Fc[(j, k)] * Fc[(k, j)])
        - F[j] * (Fc[(i, j)] - Fc[(i, k)] * Fc[(k, j)])
        - F[k] * (Fc[(i, k)] - Fc[(i, j)] * Fc[(j, k)])
    )
    den = (
        1
        - Fc[(i, j)] * Fc[(j, i)]
        - Fc[(i, k)] * Fc[(k, i)]
        - Fc[(j, k)] * Fc[(k, j)]
        + Fc[(i, j)] * Fc[(j, k)] * Fc[(k, i)]
        + Fc[(i, k)] * Fc[(k, j)] * Fc[(j, i)]
    )
    return num / den


def _trio_denominator(mu: dict) -> Fraction:
    g = lambda a, b: mu[(a, b)]  # noqa: E731
    return (
        g(1, 2) * g(2, 1) + g(1, 3) * g(3, 1) + g(2, 3) * g(3, 2)
        - g(1, 2) * g(2, 3) - g(1, 3) * g(3, 2)
        - g(2, 1) * g(1, 3) - g(2, 3) * g(3, 1) - g(3, 1) * g(1, 2) - g(3, 2) * g(2, 1)
    )


def win_prob_closed_form(means: MeanTable, target: int) -> Fraction:
    """Probability that pattern `target` wins a trio, from the nine expected values."""
    mu = means.mu
    i = target
    j, k = (x for x in (1, 2, 3) if x != i)
    g = lambda a, b: mu[(a, b)]  # noqa: E731
    num = (
        mu[i] * (g(j, k) + g(k, j))
        + mu[j] * (g(i, j) - g(i, k) - g(k, j))
        + mu[k] * (g(i, k) - g(i, j) - g(j, k))
        + g(j, k) * g(k, j) - g(i, k) * g(k, j) - g(i, j) * g(j, k)
    )
    den = _trio_denominator(mu)
    if den == 0:
        raise DegenerateMeansError("zero denominator in the trio win-probability closed form", dict(mu))
    return num / den


def duration_closed_form(means: MeanTable) -> Fraction:
    """Expected number of trials of a trio, from the nine expected values."""
    mu = means.mu
    g = lambda a, b: mu[(a, b)]  # noqa: E731
    num = (
        mu[1] * (g(2, 3) * g(3, 2) - g(2, 3) * g(3, 1) - g(3, 2) * g(2, 1))
        + mu[2] * (g(1, 3) * g(3, 1) - g(1, 3) * g(3, 2) - g(3, 1) * g(1, 2))
        + mu[3] * (g(1, 2) * g(2, 1) - g(1, 2) * g(2, 3) - g(2, 1) * g(1, 3))
        + g(1, 2) * g(2, 3) * g(3, 1)
        + g(1, 3) * g(3, 2) * g(2, 1)
    )
    den = _trio_denominator(mu)
    if den == 0:
        raise DegenerateMeansError("zero denominator in the trio duration closed form", dict(mu))
    return num / den


def trio(w1: Pattern, w2: Pattern, w3: Pattern, params: ProbParams) -> TrioOutcome:
    """Three patterns from scratch."""
    pgfs = build_pgfs((w1, w2, w3), params)
    means = pgfs.means()
    sgf_win: dict[int, RationalFunction] = {}
    win: dict[int, Fraction] = {}
    for i in (1, 2, 3):
        opponents = tuple(x for x in (1, 2, 3) if x != i)
        sgf_win[i] = win_sgf(pgfs, i, opponents)
        win[i] = _finite_limit(sgf_win[i])
        _require_equal(
            f"trio win probability of {pgfs.patterns[i - 1]}",
            win[i],
            win_prob_closed_form(means, i),
        )
    _require_equal("trio win probabilities sum", sum(win.values(), Fraction(0)), Fraction(1))

    H = sgf_win[1] + sgf_win[2] + sgf_win[3]
    expected = _finite_limit(derivative(H))
    _require_equal("trio expected duration", expected, duration_closed_form(means))
    logger.debug("trio %s, %s, %s at p=%s: %s, duration %s", w1, w2, w3, params.p, win, expected)
    return TrioOutcome(
        patterns=(w1, w2, w3),
        sgf_win=sgf_win,
        win_prob=win,
        duration_pgf=H,
        expected_duration=expected,
        means=means,
    )


def race(patterns: Sequence[Pattern], params: ProbParams) -> RaceResult:
    """
    Dispatch by the number of patterns.

    One pattern is its own mean, two and three use the generating functions,
    four or more have no closed form and go to the automaton oracle.
    """
    patterns = tuple(patterns)
    n = len(patterns)
    if n == 1:
        return RaceResult(patterns, {1: Fraction(1)}, mean(scratch_F(patterns[0], params)), "renewal")
    if n == 2:
        out = duel(*patterns, params)
        return RaceResult(patterns, out.win_prob, out.expected_duration, "generating-function duel")
    if n == 3:
        out = trio(*patterns, params)
        return RaceResult(patterns, out.win_prob, out.expected_duration, "generating-function trio")
    automaton = build_automaton(patterns)
    result = absorption(automaton, automaton.start, params)
    return RaceResult(patterns, result.win_prob, result.expected_steps, "oracle")


def closed_form_race(patterns: Sequence[Pattern], params: ProbParams) -> RaceResult:
    """Win probabilities (and trio duration) from the correlation closed forms only."""
    patterns = tuple(patterns)
    means = mean_table(patterns, params, route="correlation")
    if len(patterns) == 2:
        win = {1: duel_win_prob_closed_form(means, 1, 2), 2: duel_win_prob_closed_form(means, 2, 1)}
        return RaceResult(patterns, win, None, "closed-form duel")
    win = {i: win_prob_closed_form(means, i) for i in (1, 2, 3)}
    return RaceResult(patterns, win, duration_closed_form(means), "closed-form trio")
