"""
Command-line entry point for penney_race.

Commands:
1. mean      - expected waiting time for one pattern (optionally with a head start)
2. duel      - two patterns racing (optionally starting after a third)
3. trio      - three patterns racing, with expected duration
4. race      - any number of patterns (four or more go to the Markov oracle)
5. verify    - cross-check every route against every other
6. sweep     - CSV over a grid of p, with optional minimizer refinement
7. simulate  - seeded Monte Carlo next to the exact values

Exit codes: 0 success, 2 invalid input, 3 verification mismatch.
"""

import argparse
import math
import os
import sys
from fractions import Fraction

# Add the src directory to the path for imports
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from config import (
    DEFAULT_FORMAT,
    DEFAULT_GAMES,
    DEFAULT_GRID,
    DEFAULT_NMAX,
    DEFAULT_SEED,
    EXIT_INVALID_INPUT,
    EXIT_MISMATCH,
    EXIT_OK,
    OUTPUT_FORMATS,
    SWEEP_MODES,
)
from core.competition import duel, duel_given, race, trio
from core.errors import InvalidInputError, VerificationMismatch
from core.exact_algebra import series_coefficients
from core.montecarlo import SimConfig, simulate
from core.patterns import Pattern, ProbParams, parse_pattern
from core.renewal_gf import checked_mean, head_F, scratch_F
from core.sweep import find_minimum, sweep, sweep_columns
from core.verification import verify
from utils.formatting import OutputRecord, exact_pair, parse_probability, render_csv, to_decimal
from utils.logger import setup_logger

logger = setup_logger()


def _params(args: argparse.Namespace) -> ProbParams:
    """Exact ProbParams from the --p text."""
    return ProbParams(parse_probability(args.p))


def _patterns(texts: list[str]) -> list[Pattern]:
    return [parse_pattern(text) for text in texts]


def _echo_inputs(patterns: list[Pattern], params: ProbParams, **extra: object) -> dict:
    inputs = {
        "patterns": [str(w) for w in patterns],
        "p": str(params.p),
        "p_decimal": to_decimal(params.p),
    }
    inputs.update(extra)
    return inputs


def _z_score(observed: float, target: float, spread: float) -> str:
    """Standardized deviation to 3 decimals; "n/a" when the spread is zero."""
    if spread <= 0:
        return "n/a"
    return f"{(observed - target) / spread:.3f}"


def _win_rows(patterns: list[Pattern], win_prob: dict[int, Fraction]) -> list[list[str]]:
    return [
        [str(w), str(win_prob[i]), to_decimal(win_prob[i])]
        for i, w in enumerate(patterns, 1)
    ]


def cmd_mean(args: argparse.Namespace) -> OutputRecord:
    """
    Expected waiting time for one pattern, optionally after a head start.

    Args:
        args: Parsed arguments with pattern, p, head, pgf and series

    Returns:
        OutputRecord: The mean, plus the PGF and its series when asked for
    """
    w = parse_pattern(args.pattern)
    params = _params(args)
    head = parse_pattern(args.head) if args.head else None
    if head is not None and w.symbols in head.symbols:
        raise InvalidInputError(f"{w} occurs inside head {head}")

    value = checked_mean(w, params, head)
    pgf = (head_F(w, head, params) if head else scratch_F(w, params)).fn

    results: dict = {"mean": exact_pair(value)}
    rows = [["mean", str(value), to_decimal(value)]]
    if args.pgf:
        results["pgf"] = str(pgf)
        rows.append(["pgf", str(pgf), ""])
    if args.series is not None:
        coefficients = series_coefficients(pgf, args.series)
        results["series"] = [str(c) for c in coefficients]
        rows.extend([f"f_{n}", str(c), to_decimal(c)] for n, c in enumerate(coefficients))

    return OutputRecord(
        command="mean",
        inputs=_echo_inputs([w], params, head=str(head) if head else None),
        results=results,
        provenance=["derivative of the PGF at s=1", "correlation closed form (asserted equal)"],
        header=["quantity", "exact", "decimal"],
        rows=rows,
    )


def cmd_duel(args: argparse.Namespace) -> OutputRecord:
    """Two-pattern race, or the conditional race when --given is set."""
    patterns = _patterns(args.patterns)
    params = _params(args)
    if args.given:
        given = parse_pattern(args.given)
        outcome = duel_given(patterns[0], patterns[1], given, params)
        provenance = ["limit at s=1 of the conditional win SGFs"]
    else:
        given = None
        outcome = duel(patterns[0], patterns[1], params)
        provenance = ["limit at s=1 of the win SGFs", "mean closed form (asserted equal)"]

    rows = _win_rows(patterns, outcome.win_prob)
    rows.append(["duration", str(outcome.expected_duration), to_decimal(outcome.expected_duration)])
    return OutputRecord(
        command="duel",
        inputs=_echo_inputs(patterns, params, given=str(given) if given else None),
        results={
            "win_prob": {str(w): exact_pair(outcome.win_prob[i]) for i, w in enumerate(patterns, 1)},
            "expected_duration": exact_pair(outcome.expected_duration),
        },
        provenance=provenance,
        header=["pattern", "exact", "decimal"],
        rows=rows,
    )


def cmd_trio(args: argparse.Namespace) -> OutputRecord:
    """Three-pattern race with win probabilities and expected duration."""
    patterns = _patterns(args.patterns)
    params = _params(args)
    outcome = trio(*patterns, params)

    rows = _win_rows(patterns, outcome.win_prob)
    rows.append(["duration", str(outcome.expected_duration), to_decimal(outcome.expected_duration)])
    return OutputRecord(
        command="trio",
        inputs=_echo_inputs(patterns, params),
        results={
            "win_prob": {str(w): exact_pair(outcome.win_prob[i]) for i, w in enumerate(patterns, 1)},
            "expected_duration": exact_pair(outcome.expected_duration),
        },
        provenance=[
            "limit at s=1 of the win SGFs and of H'(s)",
            "mean closed forms (asserted equal)",
        ],
        header=["pattern", "exact", "decimal"],
        rows=rows,
    )


def cmd_race(args: argparse.Namespace) -> OutputRecord:
    """Race of two or more patterns through the cheapest exact route."""
    patterns = _patterns(args.patterns)
    if len(patterns) < 2:
        raise InvalidInputError("race needs at least two patterns")
    params = _params(args)
    result = race(patterns, params)

    rows = _win_rows(patterns, result.win_prob)
    rows.append(["duration", str(result.expected_duration), to_decimal(result.expected_duration)])
    provenance = [result.route]
    if result.route == "oracle":
        provenance.append("absorbing Markov chain; no generating-function closed form for four or more patterns")
    return OutputRecord(
        command="race",
        inputs=_echo_inputs(patterns, params),
        results={
            "win_prob": {str(w): exact_pair(result.win_prob[i]) for i, w in enumerate(patterns, 1)},
            "expected_duration": exact_pair(result.expected_duration),
        },
        provenance=provenance,
        header=["pattern", "exact", "decimal"],
        rows=rows,
    )


def cmd_verify(args: argparse.Namespace) -> OutputRecord:
    """
    Cross-check every route on the given patterns.

    Args:
        args: Parsed arguments with patterns, p, nmax and format

    Returns:
        OutputRecord: One row per passing check

    Raises:
        VerificationMismatch: After printing the report, if any check disagrees
    """
    patterns = _patterns(args.patterns)
    params = _params(args)
    report = verify(patterns, params, args.nmax)
    record = OutputRecord(
        command="verify",
        inputs=_echo_inputs(patterns, params, nmax=args.nmax),
        results={
            "ok": report.ok,
            "checks_passed": len(report.passed),
            "differences": report.differences,
        },
        provenance=["generating functions", "mean closed forms", "Markov oracle", "finite horizon"],
        header=["check", "status"],
        rows=[[label, "ok"] for label in report.passed]
        + [[diff, "MISMATCH"] for diff in report.differences],
    )
    if not report.ok:
        print(record.render(args.format))
        raise VerificationMismatch(
            f"{len(report.differences)} check(s) disagree", report.differences
        )
    return record


def cmd_sweep(args: argparse.Namespace) -> str:
    """
    CSV sweep over p = i/(grid+1), or the refined minimizer of one column.

    Args:
        args: Parsed arguments with mode, patterns, grid, find_min and workers

    Returns:
        str: CSV text, always; sweep has no human or JSON rendering
    """
    patterns = _patterns(args.patterns)
    rows = sweep(args.mode, patterns, args.grid, workers=args.workers)
    columns = sweep_columns(args.mode)
    if args.find_min:
        best = find_minimum(args.mode, patterns, args.find_min, args.grid, rows=rows)
        return render_csv(
            ["column", "p_grid", "p_star", "value"],
            [[best.column, to_decimal(best.p_grid), f"{best.p_star}", to_decimal(Fraction(best.value))]],
        )
    return render_csv(
        ["p"] + columns,
        [[to_decimal(row.p)] + [to_decimal(row.values[c]) for c in columns] for row in rows],
    )


def cmd_simulate(args: argparse.Namespace) -> OutputRecord:
    """Seeded Monte Carlo beside the exact values, with a z-score per row."""
    patterns = _patterns(args.patterns)
    params = _params(args)
    config = SimConfig(patterns=tuple(patterns), p=params.p, games=args.games, seed=args.seed)
    report = simulate(config, workers=args.workers)
    exact = race(patterns, params)

    rows = []
    for i, w in enumerate(patterns, 1):
        freq = report.win_frequencies[i - 1]
        target = float(exact.win_prob[i])
        spread = math.sqrt(target * (1 - target) / report.games)
        z = _z_score(freq, target, spread)
        rows.append([
            str(w), str(report.win_counts[i - 1]), f"{freq:.6f}",
            f"{report.std_error_win[i - 1]:.6f}", to_decimal(exact.win_prob[i]), z,
        ])
    target = float(exact.expected_duration)
    z = _z_score(report.mean_duration, target, report.std_error_duration)
    rows.append([
        "duration", "", f"{report.mean_duration:.6f}", f"{report.std_error_duration:.6f}",
        to_decimal(exact.expected_duration), z,
    ])
    return OutputRecord(
        command="simulate",
        inputs=_echo_inputs(patterns, params, games=args.games, seed=args.seed),
        results={
            "win_counts": {str(w): report.win_counts[i] for i, w in enumerate(patterns)},
            "mean_duration": f"{report.mean_duration:.6f}",
            "std_error_win": [f"{se:.6f}" for se in report.std_error_win],
            "std_error_duration": f"{report.std_error_duration:.6f}",
            "exact_route": exact.route,
        },
        provenance=["splitmix64 Monte Carlo", exact.route],
        header=["pattern", "wins", "observed", "std_error", "exact", "z"],
        rows=rows,
    )


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subcommand per operation."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=OUTPUT_FORMATS, default=DEFAULT_FORMAT)

    with_p = argparse.ArgumentParser(add_help=False)
    with_p.add_argument("--p", required=True, help='success probability, "a/b" or a decimal')

    parser = argparse.ArgumentParser(
        prog="penney_race",
        description="Exact first-occurrence and race statistics for S/F patterns.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_mean = sub.add_parser("mean", parents=[common, with_p], help="expected waiting time")
    p_mean.add_argument("pattern")
    p_mean.add_argument("--head", help="word already emitted before counting starts")
    p_mean.add_argument("--pgf", action="store_true", help="also print the PGF in s")
    p_mean.add_argument("--series", type=int, metavar="N", help="also list f_0..f_N")
    p_mean.set_defaults(handler=cmd_mean)

    p_duel = sub.add_parser("duel", parents=[common, with_p], help="two-pattern race")
    p_duel.add_argument("patterns", nargs=2)
    p_duel.add_argument("--given", help="start right after this completed pattern")
    p_duel.set_defaults(handler=cmd_duel)

    p_trio = sub.add_parser("trio", parents=[common, with_p], help="three-pattern race")
    p_trio.add_argument("patterns", nargs=3)
    p_trio.set_defaults(handler=cmd_trio)

    p_race = sub.add_parser("race", parents=[common, with_p], help="race of two or more patterns")
    p_race.add_argument("patterns", nargs="+")
    p_race.set_defaults(handler=cmd_race)

    p_verify = sub.add_parser("verify", parents=[common, with_p], help="cross-check all routes")
    p_verify.add_argument("patterns", nargs="+")
    p_verify.add_argument("--nmax", type=int, default=DEFAULT_NMAX)
    p_verify.set_defaults(handler=cmd_verify)

    p_sweep = sub.add_parser("sweep", help="CSV over p = i/(grid+1)")
    p_sweep.add_argument("--format", choices=("csv",), default="csv", help="sweep output is always CSV")
    p_sweep.add_argument("mode", choices=SWEEP_MODES)
    p_sweep.add_argument("patterns", nargs="+")
    p_sweep.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p_sweep.add_argument("--find-min", dest="find_min", metavar="COLUMN")
    p_sweep.add_argument("--workers", type=int, default=1)
    p_sweep.set_defaults(handler=cmd_sweep)

    p_sim = sub.add_parser("simulate", parents=[common, with_p], help="seeded Monte Carlo")
    p_sim.add_argument("patterns", nargs="+")
    p_sim.add_argument("--games", type=int, default=DEFAULT_GAMES)
    p_sim.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_sim.add_argument("--workers", type=int, default=1)
    p_sim.set_defaults(handler=cmd_simulate)

    return parser


def main(argv: list[str] | None = None) -> int:
    """Main entry point."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return EXIT_INVALID_INPUT if exc.code else EXIT_OK

    try:
        output = args.handler(args)
    except InvalidInputError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except VerificationMismatch as e:
        print(f"Verification failed: {e}", file=sys.stderr)
        for line in e.differences:
            print(f"  {line}", file=sys.stderr)
        return EXIT_MISMATCH
    except Exception as e:
        logger.exception("internal error while running %s", args.command)
        print(f"Internal error: {e}", file=sys.stderr)
        return EXIT_MISMATCH

    print(output if isinstance(output, str) else output.render(args.format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
