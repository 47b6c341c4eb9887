"""
Renewal generating functions for a single pattern.

U(s) is the sequence generating function of u_n, the probability that a
renewal (non-reusing) occurrence of the pattern completes at trial n, and
F(s) = (U - 1) / U is the PGF of the first-occurrence trial. With a head
start H already emitted, U^H has u_0 = 0 and F^H = U^H / U.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Literal, Sequence

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from core.errors import InfiniteLimitError, VerificationMismatch
from core.exact_algebra import (
    ONE,
    InfiniteLimit,
    Polynomial,
    RationalFunction,
    derivative,
    limit_at_one,
)
from core.patterns import (
    Pattern,
    ProbParams,
    autocorrelation,
    head_start_forcing,
    head_start_initials,
    validate_pattern_set,
    word_probability,
)
from utils.logger import get_logger

logger = get_logger(__name__)

MeanRoute = Literal["generating_function", "correlation"]


@dataclass(frozen=True)
class OccurrenceSGF:
    fn: RationalFunction
    kind: Literal["scratch", "head_start"]


@dataclass(frozen=True)
class FirstOccurrencePGF:
    fn: RationalFunction


@dataclass(frozen=True)
class MeanTable:
    """
    Expected first-occurrence times for a set of competing patterns.

    Keys are 1-based pattern indices: mu[i] is mu_i, mu[(i, j)] is mu_{i|j}.
    """

    patterns: tuple[Pattern, ...]
    mu: dict

    def single(self, i: int) -> Fraction:
        return self.mu[i]

    def given(self, i: int, j: int) -> Fraction:
        return self.mu[(i, j)]


def _geometric_tail(params: ProbParams, w: Pattern) -> RationalFunction:
    """P s^m / (1 - s)."""
    m = w.length
    return RationalFunction(
        Polynomial.monomial(word_probability(w, params), m), Polynomial((1, -1))
    )


def scratch_U(w: Pattern, params: ProbParams) -> OccurrenceSGF:
    """U(s) = 1 + P s^m / ((1 - s) C(s))."""
    corr = autocorrelation(w, params).polynomial()
    fn = ONE + _geometric_tail(params, w) / corr
    return OccurrenceSGF(fn=fn, kind="scratch")


def scratch_F(w: Pattern, params: ProbParams) -> FirstOccurrencePGF:
    """
    First-occurrence PGF from scratch, F(s) = (U(s) - 1) / U(s).

    Args:
        w: Target pattern
        params: Success and failure probabilities

    Returns:
        FirstOccurrencePGF: Reduced F(s), with F(1) = 1
    """
    U = scratch_U(w, params).fn
    fn = (U - 1) / U
    logger.debug("F(s) for %s: degrees %d/%d", w, fn.num.degree, fn.den.degree)
    return FirstOccurrencePGF(fn=fn)


def head_U(w: Pattern, head: Pattern, params: ProbParams) -> OccurrenceSGF:
    """
    U^H(s) = [P s^m/(1-s) + sum_k P_k s^(m-k) B_k(s)] / C(s).

    B_k truncates U^H below s^k, i.e. the initial terms that fall outside the
    range where the renewal recursion holds. The sum runs over every k in the
    correlation set, k = m included.
    """
    m = w.length
    corr = autocorrelation(w, params)
    initials = head_start_initials(w, head, params)
    correction = Polynomial.zero()
    for k, weight in corr.entries.items():
        B_k = initials.polynomial(below=k)
        correction = correction + Polynomial.monomial(weight, m - k) * B_k
    fn = (_geometric_tail(params, w) + correction) / corr.polynomial()
    return OccurrenceSGF(fn=fn, kind="head_start")


def head_F(w: Pattern, head: Pattern, params: ProbParams) -> FirstOccurrencePGF:
    """
    First-occurrence PGF after a head start, F^H(s) = U^H(s) / U(s).

    Args:
        w: Target pattern
        head: Word already emitted; must not contain w
        params: Success and failure probabilities

    Returns:
        FirstOccurrencePGF: Reduced F^H(s)
    """
    fn = head_U(w, head, params).fn / scratch_U(w, params).fn
    logger.debug("F^H(s) for %s given %s: degrees %d/%d", w, head, fn.num.degree, fn.den.degree)
    return FirstOccurrencePGF(fn=fn)


def mean(f: FirstOccurrencePGF) -> Fraction:
    """mu = F'(1), evaluated as a limit."""
    value = limit_at_one(derivative(f.fn))
    if isinstance(value, InfiniteLimit):
        raise InfiniteLimitError(f"mean is infinite for F(s) = {f.fn}")
    return value


def mean_from_correlation(w: Pattern, params: ProbParams) -> Fraction:
    """mu = C(1) / P."""
    return autocorrelation(w, params).total() / word_probability(w, params)


def head_mean_from_correlation(w: Pattern, head: Pattern, params: ProbParams) -> Fraction:
    """
    mu^H = (C(1) - A(1)) / P, with A_j the head-start forcing terms below m.

    Same leading-number bookkeeping as mean_from_correlation, minus what the
    head already contributes.
    """
    forcing = sum(head_start_forcing(w, head, params).values(), Fraction(0))
    return (autocorrelation(w, params).total() - forcing) / word_probability(w, params)


def mean_table(
    patterns: Sequence[Pattern],
    params: ProbParams,
    route: MeanRoute = "generating_function",
) -> MeanTable:
    """
    mu_i and mu_{i|j} for every pattern and ordered pair.

    The generating-function route differentiates F and F^H; the correlation
    route uses the closed forms. Both give identical values.
    """
    validate_pattern_set(patterns)
    mu: dict = {}
    indexed = list(enumerate(patterns, 1))
    for i, w in indexed:
        if route == "generating_function":
            mu[i] = mean(scratch_F(w, params))
        else:
            mu[i] = mean_from_correlation(w, params)
    for (i, w), (j, head) in permutations(indexed, 2):
        if route == "generating_function":
            mu[(i, j)] = mean(head_F(w, head, params))
        else:
            mu[(i, j)] = head_mean_from_correlation(w, head, params)
    return MeanTable(patterns=tuple(patterns), mu=mu)


def checked_mean(w: Pattern, params: ProbParams, head: Pattern | None = None) -> Fraction:
    """Mean by the derivative route, asserted against the closed form."""
    if head is None:
        value = mean(scratch_F(w, params))
        closed = mean_from_correlation(w, params)
    else:
        value = mean(head_F(w, head, params))
        closed = head_mean_from_correlation(w, head, params)
    if value != closed:
        raise VerificationMismatch(
            f"mean of {w} (head {head}): derivative route {value} != closed form {closed}",
            [f"derivative={value}", f"closed={closed}"],
        )
    return value


if __name__ == "__main__":
    # Test execution
    params = ProbParams(Fraction(1, 2))
    w = Pattern("SSFFS")
    print(f"F(s) for {w}: {scratch_F(w, params).fn}")
    print(f"mu = {checked_mean(w, params)}")
    print(f"mu^SSF = {checked_mean(w, params, Pattern('SSF'))}")
