"""
Cross-check battery: generating functions vs closed forms vs the oracle.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Sequence

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from core.competition import build_pgfs, duel, duel_given, trio, win_sgf
from core.errors import InvalidInputError, VerificationMismatch
from core.exact_algebra import series_coefficients
from core.oracle import absorption, build_automaton, finite_horizon, start_state_after
from core.patterns import Pattern, ProbParams, validate_pattern_set
from core.renewal_gf import (
    head_F,
    head_mean_from_correlation,
    mean,
    mean_from_correlation,
    scratch_F,
)
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass
class VerificationReport:
    passed: list[str] = field(default_factory=list)
    differences: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.differences

    def compare(self, label: str, **routes: object) -> None:
        values = list(routes.values())
        if all(v == values[0] for v in values[1:]):
            self.passed.append(label)
            logger.info("agree: %s = %s", label, values[0])
        else:
            detail = ", ".join(f"{name}={value}" for name, value in routes.items())
            self.differences.append(f"{label}: {detail}")
            logger.warning("MISMATCH %s: %s", label, detail)


def _check_means(report: VerificationReport, patterns: Sequence[Pattern], params: ProbParams) -> None:
    for w in patterns:
        automaton = build_automaton([w])
        report.compare(
            f"mu({w})",
            derivative=mean(scratch_F(w, params)),
            correlation=mean_from_correlation(w, params),
            oracle=absorption(automaton, automaton.start, params).expected_steps,
        )
    for w, head in permutations(patterns, 2):
        automaton = build_automaton([w])
        start = start_state_after(automaton, head)
        report.compare(
            f"mu({w}|{head})",
            derivative=mean(head_F(w, head, params)),
            correlation=head_mean_from_correlation(w, head, params),
            oracle=absorption(automaton, start, params).expected_steps,
        )


def _check_series(
    report: VerificationReport,
    label: str,
    sgfs: dict,
    horizon: dict[int, list[Fraction]],
    n_max: int,
) -> None:
    for i, sgf in sgfs.items():
        report.compare(
            f"{label} series of winner {i} up to n={n_max}",
            generating_function=series_coefficients(sgf, n_max),
            oracle=horizon[i],
        )


def verify(patterns: Sequence[Pattern], params: ProbParams, n_max: int) -> VerificationReport:
    """Run every available route for a duel or trio and collect disagreements."""
    patterns = tuple(patterns)
    if len(patterns) not in (2, 3):
        raise InvalidInputError("verify takes two or three patterns")
    if n_max < 0:
        raise InvalidInputError("nmax must be nonnegative")
    validate_pattern_set(patterns)
    report = VerificationReport()

    _check_means(report, patterns, params)

    automaton = build_automaton(patterns)
    oracle = absorption(automaton, automaton.start, params)
    horizon = finite_horizon(automaton, automaton.start, params, n_max)
    try:
        outcome = duel(*patterns, params) if len(patterns) == 2 else trio(*patterns, params)
    except VerificationMismatch as exc:
        report.differences.extend(exc.differences or [str(exc)])
        return report

    for i, value in outcome.win_prob.items():
        report.compare(f"win probability of {patterns[i - 1]}", engine=value, oracle=oracle.win_prob[i])
    report.compare("expected duration", engine=outcome.expected_duration, oracle=oracle.expected_steps)
    report.compare(
        "sum of win probabilities", total=sum(outcome.win_prob.values(), Fraction(0)), one=Fraction(1)
    )
    _check_series(report, "race", outcome.sgf_win, horizon, n_max)

    if len(patterns) == 3:
        pgfs = build_pgfs(patterns, params)
        for i in (1, 2, 3):
            j, k = (x for x in (1, 2, 3) if x != i)
            report.compare(
                f"X_{i}{{{j},{k}}} opponent order",
                forward=win_sgf(pgfs, i, (j, k)),
                reversed=win_sgf(pgfs, i, (k, j)),
            )
        for i, j, k in ((1, 2, 3), (1, 3, 2), (2, 3, 1)):
            w1, w2, given = patterns[i - 1], patterns[j - 1], patterns[k - 1]
            conditional = duel_given(w1, w2, given, params)
            sub = build_automaton([w1, w2])
            start = start_state_after(sub, given)
            sub_oracle = absorption(sub, start, params)
            for idx in (1, 2):
                report.compare(
                    f"win probability of {conditional.patterns[idx - 1]} in {w1} vs {w2} given {given}",
                    engine=conditional.win_prob[idx],
                    oracle=sub_oracle.win_prob[idx],
                )
            _check_series(
                report,
                f"{w1} vs {w2} given {given}",
                conditional.sgf_win,
                finite_horizon(sub, start, params, n_max),
                n_max,
            )

    logger.info("verification: %d checks passed, %d differences", len(report.passed), len(report.differences))
    return report
