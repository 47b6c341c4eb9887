"""
Binary outcome patterns and their overlap (correlation) structure.

A pattern is a word over {S, F}; S has probability p and F has q = 1 - p.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import ALIASES, FAILURE, SUCCESS
from core.errors import InvalidInputError, PatternError, PatternSetError
from core.exact_algebra import Polynomial


@dataclass(frozen=True)
class Pattern:
    """A nonempty word over {S, F}."""

    symbols: str

    def __post_init__(self) -> None:
        if not self.symbols:
            raise PatternError("pattern must not be empty")
        bad = set(self.symbols) - {SUCCESS, FAILURE}
        if bad:
            raise PatternError(f"invalid symbol(s) {''.join(sorted(bad))!r} in {self.symbols!r}")

    @property
    def length(self) -> int:
        return len(self.symbols)

    def prefix(self, k: int) -> str:
        return self.symbols[:k]

    def suffix(self, k: int) -> str:
        return self.symbols[len(self.symbols) - k:] if k > 0 else ""

    def mirrored(self) -> "Pattern":
        """Swap S and F."""
        return Pattern(self.symbols.translate(str.maketrans("SF", "FS")))

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return self.symbols


@dataclass(frozen=True)
class ProbParams:
    """Success probability p and failure probability q = 1 - p."""

    p: Fraction
    q: Fraction = field(init=False)

    def __post_init__(self) -> None:
        p = Fraction(self.p)
        if not 0 < p < 1:
            raise InvalidInputError("p must be in (0,1)")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", 1 - p)

    def weight(self, symbol: str) -> Fraction:
        return self.p if symbol == SUCCESS else self.q


@dataclass(frozen=True)
class CorrelationSet:
    """Overlap lengths k of a word with itself (or a head), with tail weights P_k."""

    length: int
    entries: dict[int, Fraction]

    def polynomial(self) -> Polynomial:
        """C(s) = sum over k of P_k s^(m-k)."""
        coeffs = [Fraction(0)] * self.length
        for k, weight in self.entries.items():
            coeffs[self.length - k] += weight
        return Polynomial(coeffs)

    def total(self) -> Fraction:
        return sum(self.entries.values(), Fraction(0))


@dataclass(frozen=True)
class HeadStartInitials:
    """u_j^H for 1 <= j <= m-1, the renewal probabilities before trial m."""

    values: dict[int, Fraction]

    def polynomial(self, below: int | None = None) -> Polynomial:
        """sum of u_j^H s^j over j < below (all j when below is None)."""
        top = max(self.values, default=0) + 1 if below is None else below
        coeffs = [Fraction(0)] * max(top, 1)
        for j, value in self.values.items():
            if j < top:
                coeffs[j] = value
        return Polynomial(coeffs)


def parse_pattern(text: str) -> Pattern:
    """
    Parse pattern text into canonical S/F form.

    Accepts S/F or the coin aliases H/T (case-insensitive), but not a mix of
    the two alphabets in one string.
    """
    raw = text.strip().upper()
    if not raw:
        raise PatternError("pattern must not be empty")
    bad = sorted({c for c in raw if c not in ALIASES})
    if bad:
        raise PatternError(f"invalid symbol {''.join(bad)!r} in pattern {text!r}")
    used = set(raw)
    if used & {"S", "F"} and used & {"H", "T"}:
        raise PatternError(f"pattern {text!r} mixes S/F with H/T")
    return Pattern("".join(ALIASES[c] for c in raw))


def validate_pattern_set(patterns: Sequence[Pattern]) -> None:
    """Require pairwise distinct patterns, none a substring of another."""
    if len(patterns) < 2:
        raise PatternSetError("at least two patterns are required")
    for a, b in combinations(patterns, 2):
        if a == b:
            raise PatternSetError(f"duplicate pattern {a}", pair=(str(a), str(b)))
        if a.symbols in b.symbols:
            raise PatternSetError(f"{a} is a substring of {b}", pair=(str(a), str(b)))
        if b.symbols in a.symbols:
            raise PatternSetError(f"{b} is a substring of {a}", pair=(str(b), str(a)))


def word_probability(word: Iterable[str] | Pattern, params: ProbParams) -> Fraction:
    """Product of p per S and q per F; the empty word has probability 1."""
    if isinstance(word, Pattern):
        word = word.symbols
    result = Fraction(1)
    for symbol in word:
        result *= params.weight(symbol)
    return result


def autocorrelation(w: Pattern, params: ProbParams) -> CorrelationSet:
    """Slide w past itself; k is kept when the length-k prefix equals the length-k suffix."""
    m = w.length
    entries = {
        k: word_probability(w.symbols[k:], params)
        for k in range(m, 0, -1)
        if w.prefix(k) == w.suffix(k)
    }
    return CorrelationSet(length=m, entries=entries)


def _head_match(w: Pattern, head: Pattern, j: int) -> bool:
    """Whether head's last m-j symbols equal w's first m-j symbols."""
    overlap = w.length - j
    return head.length >= overlap and head.suffix(overlap) == w.prefix(overlap)


def head_start_forcing(w: Pattern, head: Pattern, params: ProbParams) -> dict[int, Fraction]:
    """
    A_j = P(w occupies trials j-m+1..j) for 1 <= j < m, given the head.

    Nonzero only where a suffix of head lines up with a prefix of w.
    """
    m = w.length
    return {
        j: word_probability(w.suffix(j), params) if _head_match(w, head, j) else Fraction(0)
        for j in range(1, m)
    }


def head_start_initials(w: Pattern, head: Pattern, params: ProbParams) -> HeadStartInitials:
    """
    Solve the triangular system for u_1^H..u_{m-1}^H.

    u_j = A_j - sum over k < m in the correlation set (with j-(m-k) >= 1) of
    P_k u_{j-(m-k)}; u_0^H = 0.
    """
    m = w.length
    corr = autocorrelation(w, params)
    forcing = head_start_forcing(w, head, params)
    values: dict[int, Fraction] = {}
    for j in range(1, m):
        value = forcing[j]
        for k, weight in corr.entries.items():
            if k == m:
                continue
            earlier = j - (m - k)
            if earlier >= 1:
                value -= weight * values[earlier]
        values[j] = value
    return HeadStartInitials(values=values)


def effective_head(w: Pattern, head: Pattern) -> str:
    """Longest suffix of head that is a proper prefix of w (possibly empty)."""
    for k in range(min(head.length, w.length - 1), 0, -1):
        if head.suffix(k) == w.prefix(k):
            return head.suffix(k)
    return ""
