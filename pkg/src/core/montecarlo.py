"""
Seeded Monte Carlo simulation of pattern races.

The generator is splitmix64 (constants in config). Every game draws from its
own substream derived from (seed, game index), so the merged report does not
depend on how games are split across workers.
"""

from __future__ import annotations

import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import FAILURE, MASK64, SPLITMIX64_GAMMA, SPLITMIX64_MUL1, SPLITMIX64_MUL2, SUCCESS
from core.errors import InvalidInputError
from core.oracle import PrefixAutomaton, build_automaton
from core.patterns import Pattern, ProbParams, validate_pattern_set
from utils.logger import get_logger

logger = get_logger(__name__)

UNIT = 2.0 ** -53


class SplitMix64:
    """64-bit splitmix generator."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + SPLITMIX64_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * SPLITMIX64_MUL1) & MASK64
        z = ((z ^ (z >> 27)) * SPLITMIX64_MUL2) & MASK64
        return z ^ (z >> 31)

    def next_unit(self) -> float:
        """Uniform in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * UNIT


def derive_seed(seed: int, index: int) -> int:
    """Seed of the substream for one game, independent of how games are split across workers."""
    return SplitMix64((seed + index * SPLITMIX64_GAMMA) & MASK64).next_u64()


@dataclass(frozen=True)
class SimConfig:
    patterns: tuple[Pattern, ...]
    p: Fraction
    games: int
    seed: int

    def __post_init__(self) -> None:
        if self.games < 1:
            raise InvalidInputError("games must be at least 1")
        if not 0 <= self.seed <= MASK64:
            raise InvalidInputError("seed must be a 64-bit unsigned integer")
        ProbParams(self.p)
        if len(self.patterns) > 1:
            validate_pattern_set(self.patterns)


@dataclass(frozen=True)
class SimReport:
    games: int
    win_counts: tuple[int, ...]
    mean_duration: float
    std_error_win: tuple[float, ...]
    std_error_duration: float

    @property
    def win_frequencies(self) -> tuple[float, ...]:
        return tuple(count / self.games for count in self.win_counts)


def _tables(automaton: PrefixAutomaton) -> tuple[list[int], list[int]]:
    """Successor tables; absorbing successors are encoded as -(winner index)."""
    index = {state: i for i, state in enumerate(automaton.states)}

    def code(nxt: str) -> int:
        return -automaton.winner(nxt) if automaton.is_absorbing(nxt) else index[nxt]

    on_success = [code(automaton.transitions[s][SUCCESS]) for s in automaton.states]
    on_failure = [code(automaton.transitions[s][FAILURE]) for s in automaton.states]
    return on_success, on_failure


def _run_games(
    patterns: Sequence[Pattern], p: float, seed: int, start: int, stop: int
) -> tuple[list[int], int, int]:
    """Play games start..stop-1; return win counts, sum and sum of squares of durations."""
    on_success, on_failure = _tables(build_automaton(patterns))
    wins = [0] * len(patterns)
    total = 0
    total_sq = 0
    for game in range(start, stop):
        rng = SplitMix64(derive_seed(seed, game))
        state = 0
        steps = 0
        while state >= 0:
            steps += 1
            state = on_success[state] if rng.next_unit() < p else on_failure[state]
        wins[-state - 1] += 1
        total += steps
        total_sq += steps * steps
    return wins, total, total_sq


def _partitions(games: int, workers: int) -> list[tuple[int, int]]:
    size = math.ceil(games / workers)
    return [(start, min(start + size, games)) for start in range(0, games, size)]


def simulate(config: SimConfig, workers: int = 1) -> SimReport:
    """Play config.games independent races and summarize them."""
    p = float(config.p)
    chunks = _partitions(config.games, max(1, workers))
    logger.debug("simulating %d games in %d partition(s)", config.games, len(chunks))

    args = [(config.patterns, p, config.seed, start, stop) for start, stop in chunks]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_games, *zip(*args)))
    else:
        results = [_run_games(*a) for a in args]

    wins = [0] * len(config.patterns)
    total = 0
    total_sq = 0
    for chunk_wins, chunk_total, chunk_sq in results:
        wins = [a + b for a, b in zip(wins, chunk_wins)]
        total += chunk_total
        total_sq += chunk_sq

    n = config.games
    mean_duration = Fraction(total, n)
    if n > 1:
        variance = (Fraction(total_sq) - Fraction(total * total, n)) / (n - 1)
        se_duration = math.sqrt(variance / n)
    else:
        se_duration = 0.0
    se_win = tuple(math.sqrt((w / n) * (1 - w / n) / n) for w in wins)
    return SimReport(
        games=n,
        win_counts=tuple(wins),
        mean_duration=float(mean_duration),
        std_error_win=se_win,
        std_error_duration=se_duration,
    )
