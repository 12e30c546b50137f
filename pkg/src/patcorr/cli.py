"""Command line interface.

Every command prints a short human summary by default and a single JSON
object with --structured.  Rationals appear as "p/q" strings in the
structured output.  Exit codes: 0 on success, 1 on a usage error, 2
when an internal consistency check failed (or a verification suite
reported failures).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .classify import (
    CensusReport,
    census,
    check_theorem_c,
    saturation_violation,
    twist,
)
from .correlation import bootstrap
from .decider import InternalConsistencyError, decide
from .oracle import empirical_correlation, empirical_restricted_correlation
from .pattern_sets import (
    PatternSet,
    PeriodicFactor,
    ReconstructionError,
    invariant_decomposition,
)
from .suites import SUITE_NAMES, run_suite


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D401  (argparse hook)
        raise _UsageError(message)


def _rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _emit(record: dict) -> None:
    print(json.dumps(record, sort_keys=True, separators=(",", ":")))


def _add_set_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-k", "--base", type=int, default=2, help="digit base (default 2)")
    parser.add_argument(
        "-s",
        "--set",
        dest="set_text",
        required=True,
        help='comma-separated digit words, e.g. "01,11"; "" is the empty set',
    )
    parser.add_argument(
        "--level",
        type=int,
        default=None,
        help="operating length (defaults to the longest word length)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="patcorr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decide", help="decide whether all shifted correlations vanish")
    _add_set_arguments(p)
    p.add_argument("--structured", action="store_true")
    p.set_defaults(handler=_cmd_decide)

    p = sub.add_parser("correlation", help="exact correlation values")
    _add_set_arguments(p)
    p.add_argument("--shift", type=int, default=None, help="a single shift")
    p.add_argument("--max-shift", type=int, default=None, help="sweep shifts 1..MAX")
    p.add_argument("--residue", type=int, default=None, help="restrict to one class")
    p.add_argument("--structured", action="store_true")
    p.set_defaults(handler=_cmd_correlation)

    p = sub.add_parser("census", help="sweep a binary candidate family")
    p.add_argument("-k", "--base", type=int, default=2)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--selection", choices=("all", "self-invariant"), default="all")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--list", dest="list_path", default=None, help="write noncorrelated sets to a file")
    p.add_argument("--structured", action="store_true")
    p.set_defaults(handler=_cmd_census)

    p = sub.add_parser("saturation", help="test the saturation property")
    _add_set_arguments(p)
    p.add_argument("--structured", action="store_true")
    p.set_defaults(handler=_cmd_saturation)

    p = sub.add_parser("decompose", help="split off the self-invariant part")
    _add_set_arguments(p)
    p.add_argument("--structured", action="store_true")
    p.set_defaults(handler=_cmd_decompose)

    p = sub.add_parser("twist", help="multiply by a periodic sign and rebuild the set")
    _add_set_arguments(p)
    p.add_argument(
        "--factor",
        required=True,
        help='one period as a sign string, e.g. "+-"',
    )
    p.add_argument("--structured", action="store_true")
    p.set_defaults(handler=_cmd_twist)

    p = sub.add_parser("estimate", help="empirical correlation from a prefix")
    _add_set_arguments(p)
    p.add_argument("--shift", type=int, required=True)
    p.add_argument("--samples", type=int, default=1 << 20)
    p.add_argument("--residue", type=int, default=None)
    p.add_argument("--structured", action="store_true")
    p.set_defaults(handler=_cmd_estimate)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", required=True, choices=SUITE_NAMES)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--structured", action="store_true")
    p.set_defaults(handler=_cmd_verify)

    return parser


def _parse_set(ns: argparse.Namespace) -> PatternSet:
    return PatternSet.parse(ns.set_text, ns.base)


def _cmd_decide(ns: argparse.Namespace) -> int:
    decision = decide(_parse_set(ns), ns.level)
    if ns.structured:
        _emit(decision.to_record())
    elif decision.noncorrelated:
        print(
            f"noncorrelated  ({decision.elements_created} elements, "
            f"{decision.expansions} expansions)"
        )
    else:
        print(
            f"correlated: witness shift {decision.witness_shift}, "
            f"correlation {decision.witness_value}  "
            f"({decision.elements_created} elements, {decision.expansions} expansions)"
        )
    return 0


def _cmd_correlation(ns: argparse.Namespace) -> int:
    if (ns.shift is None) == (ns.max_shift is None):
        raise _UsageError("give exactly one of --shift or --max-shift")
    table = bootstrap(_parse_set(ns), ns.level)
    shifts = [ns.shift] if ns.shift is not None else list(range(1, ns.max_shift + 1))
    if any(s < 0 for s in shifts):
        raise _UsageError("shifts must be nonnegative")
    if ns.residue is None:
        values = {s: table.correlation(s) for s in shifts}
    else:
        values = {s: table.restricted(ns.residue, s) for s in shifts}
    if ns.structured:
        record = {
            "base": table.base,
            "level": table.level,
            "residue": ns.residue,
            "values": {str(s): _rational(v) for s, v in values.items()},
        }
        _emit(record)
    else:
        for s in shifts:
            print(f"shift {s}: {values[s]}")
    return 0


def _render_census(report: CensusReport, ns: argparse.Namespace) -> None:
    if ns.structured:
        _emit(report.to_record())
        return
    print(
        f"{report.noncorrelated} of {report.candidates} candidates noncorrelated "
        f"(base {report.base}, length {report.length}, {report.selection})"
    )
    for exact, count in sorted(report.by_exact_length.items()):
        print(f"  exact length {exact}: {count}")
    print(
        f"peak stored {report.peak_stored}, total expansions {report.total_expansions}"
    )
    if report.timing:
        for verdict, stats in sorted(report.timing.items()):
            print(
                f"  {verdict}: {stats['count']} candidates in {stats['seconds']:.2f}s"
            )


def _cmd_census(ns: argparse.Namespace) -> int:
    report = census(
        ns.base,
        ns.length,
        ns.selection,
        workers=ns.workers,
        keep_sets=ns.list_path is not None,
    )
    if ns.list_path is not None:
        with open(ns.list_path, "w", encoding="utf-8") as handle:
            for name in report.noncorrelated_sets or []:
                handle.write(name + "\n")
        # the file carries the listing; keep the report itself lean
        report.noncorrelated_sets = None
    _render_census(report, ns)
    return 0


def _cmd_saturation(ns: argparse.Namespace) -> int:
    violation = saturation_violation(_parse_set(ns))
    if ns.structured:
        record: dict = {"saturated": violation is None}
        if violation is not None:
            middle, first, second = violation
            record["violation"] = {
                "middle": str(middle),
                "first": first,
                "second": second,
            }
        _emit(record)
    elif violation is None:
        print("saturated")
    else:
        middle, first, second = violation
        print(
            f"not saturated: interior {str(middle) or '(empty)'}, "
            f"trailing digits {first} and {second}"
        )
    return 0


def _cmd_decompose(ns: argparse.Namespace) -> int:
    invariant, factor = invariant_decomposition(_parse_set(ns))
    if ns.structured:
        _emit({"invariant_part": str(invariant), "factor": str(factor)})
    else:
        print(f"self-invariant part: {str(invariant) or '(empty)'}")
        print(f"periodic factor: {factor}")
    return 0


def _cmd_twist(ns: argparse.Namespace) -> int:
    pattern_set = _parse_set(ns)
    factor = PeriodicFactor.parse(ns.factor, ns.base)
    twisted = twist(pattern_set, factor)
    if ns.structured:
        _emit({"twisted": str(twisted)})
    else:
        print(str(twisted) or "(empty)")
    return 0


def _cmd_estimate(ns: argparse.Namespace) -> int:
    pattern_set = _parse_set(ns)
    if ns.residue is None:
        estimate = empirical_correlation(pattern_set, ns.shift, ns.samples, ns.level)
    else:
        estimate = empirical_restricted_correlation(
            pattern_set, ns.residue, ns.shift, ns.samples, ns.level
        )
    if ns.structured:
        _emit(estimate.to_record())
    else:
        where = f", class {estimate.residue}" if estimate.residue is not None else ""
        print(
            f"estimate {estimate.value:+.6f} "
            f"(shift {estimate.shift}, {estimate.samples} samples{where})"
        )
    return 0


def _cmd_verify(ns: argparse.Namespace) -> int:
    result = run_suite(ns.suite, workers=ns.workers)
    if ns.structured:
        _emit(result.to_record())
    else:
        for check in result.checks:
            mark = "ok  " if check.passed else "FAIL"
            print(f"{mark} {check.name}: {check.detail}")
        print(f"suite {result.suite}: {'passed' if result.passed else 'FAILED'}")
    return 0 if result.passed else 2


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments and dispatch; returns the process exit code."""
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        return ns.handler(ns)
    except (InternalConsistencyError, ReconstructionError) as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 2
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
