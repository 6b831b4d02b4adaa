#!/usr/bin/env python3
"""
morphic-fg - Main Entry Point

Decides weakly-morphic, morphic and multiplication-regular for finitely
generated abelian groups, and runs the verification sweeps.

Exit codes: 0 pass, 2 usage or parse error, 3 enumeration budget exceeded,
4 disagreement between independent computations (or a failing suite).
"""

import argparse
import json
import logging
import os
import re
import sys
from datetime import datetime

from config import LOG_FILE, LOG_LEVEL
from morphic import (
    BudgetExceededError,
    DisagreementError,
    FgAbGroup,
    Infinite,
    MorphicError,
    MorphicOrchestrator,
    ParseError,
    PredicateReport,
    canonicalize,
    direct_sum,
)
from morphic.orchestrator import SCHEMA_VERSION
from suites_config import SUITES, get_suites_text

logger = logging.getLogger("morphic.cli")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_DISAGREEMENT = 4

_TERM = re.compile(r"Z(?:\^(?P<rank>\d+))?|Z/(?P<order>\d+)|(?P<zero>0)")


def parse_group_expr(text: str) -> FgAbGroup:
    """Parse 'Z', 'Z^r', 'Z/n' terms joined by '+'; '0' is the trivial group."""
    compact = "".join(text.split())
    if not compact:
        raise ParseError("empty group expression")
    groups = []
    for term in compact.split("+"):
        match = _TERM.fullmatch(term)
        if match is None:
            raise ParseError(f"cannot parse term '{term}' in '{text}'")
        if match.group("zero"):
            groups.append(FgAbGroup.trivial())
        elif match.group("order") is not None:
            n = int(match.group("order"))
            if n < 1:
                raise ParseError(f"Z/{n}: cyclic order must be positive")
            groups.append(canonicalize([n]))
        else:
            rank = match.group("rank")
            groups.append(FgAbGroup.free(int(rank) if rank is not None else 1))
    return direct_sum(*groups)


def _timestamp():
    return datetime.now().strftime("%Y-%m-%d %H:%M:%S")


def report_row(report: PredicateReport, timestamp: bool = False) -> str:
    """One JSON line for a report."""
    data = report.to_dict()
    if timestamp:
        data["generated_at"] = _timestamp()
    return json.dumps(data, ensure_ascii=False)


def report_from_row(line: str) -> PredicateReport:
    """Rebuild a report from a JSON line, re-canonicalizing the group."""
    data = json.loads(line)
    if data.get("schema") != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema {data.get('schema')!r}")
    group = parse_group_expr(data["group"])
    return PredicateReport(
        group=group.to_expr(),
        order=data["order"] if isinstance(data["order"], int) else Infinite,
        weakly_morphic=data["weakly_morphic"],
        witness=data["witness"],
        morphic=data["morphic"],
        regular_scalars=tuple(data["regular_scalars"]),
        oracle_used=data["oracle_used"],
    )


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _report_cells(report: PredicateReport) -> list:
    return [
        report.group,
        str(report.order),
        _flag(report.weakly_morphic),
        "-" if report.witness is None else str(report.witness),
        _flag(report.morphic),
        ",".join(str(a) for a in report.regular_scalars),
        _flag(report.oracle_used),
    ]


CENSUS_HEADER = ["group", "order", "weakly_morphic", "witness", "morphic", "regular_scalars", "oracle_used"]


def format_table(reports: list) -> str:
    rows = [CENSUS_HEADER] + [_report_cells(r) for r in reports]
    widths = [max(len(row[i]) for row in rows) for i in range(len(CENSUS_HEADER))]
    return "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows
    )


def format_report(report: PredicateReport) -> str:
    cells = _report_cells(report)
    width = max(len(h) for h in CENSUS_HEADER) + 1
    return "\n".join(f"{(h + ':').ljust(width)} {c}" for h, c in zip(CENSUS_HEADER, cells))


def cmd_check(expr: str, oracle: bool = False, as_json: bool = False,
              timestamp: bool = False, out=None) -> PredicateReport:
    """Evaluate every predicate for one group expression and print the report."""
    out = out or sys.stdout
    group = parse_group_expr(expr)
    report = MorphicOrchestrator().check(group, oracle=oracle)
    if as_json:
        print(report_row(report, timestamp), file=out)
    else:
        if timestamp:
            print(f"# generated {_timestamp()}", file=out)
        print(format_report(report), file=out)
    return report


def cmd_census(max_order: int, as_json: bool = False, oracle: bool = False,
               timestamp: bool = False, out=None) -> list:
    """One row per isomorphism class of order <= max_order."""
    out = out or sys.stdout
    orchestrator = MorphicOrchestrator()
    reports = []
    if timestamp and not as_json:
        print(f"# generated {_timestamp()}", file=out)
    for report in orchestrator.census(max_order, oracle=oracle):
        reports.append(report)
        if as_json:
            print(report_row(report, timestamp), file=out)
    if not as_json:
        print(format_table(reports), file=out)
    return reports


def cmd_verify(suite: str, max_order: int = None, as_json: bool = False, out=None):
    """Run one verification suite and print its summary."""
    out = out or sys.stdout
    result = MorphicOrchestrator().run_suite(suite, max_order)
    if as_json:
        print(json.dumps({
            "schema": SCHEMA_VERSION,
            "suite": result.name,
            "passed": result.passed,
            "checked": result.checked,
            "counterexample": result.counterexample,
            "details": result.details,
        }, ensure_ascii=False), file=out)
    else:
        print(f"suite {result.name}: {'PASS' if result.passed else 'FAIL'} ({result.checked} checks)", file=out)
        for key, value in result.details.items():
            print(f"  {key}: {value}", file=out)
        if result.counterexample:
            print(f"  first counterexample: {result.counterexample}", file=out)
    return result


def setup_logging():
    """Warnings to stderr; a run log file when MORPHIC_LOG_FILE is set."""
    root = logging.getLogger()
    root.setLevel(logging.DEBUG)
    console = logging.StreamHandler(sys.stderr)
    console.setLevel(LOG_LEVEL.upper())
    console.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root.addHandler(console)
    if LOG_FILE:
        # Ensure the log directory exists
        os.makedirs(os.path.dirname(LOG_FILE) or ".", exist_ok=True)
        handler = logging.FileHandler(LOG_FILE, encoding="utf-8")
        handler.setLevel(logging.INFO)
        handler.setFormatter(logging.Formatter(
            "[%(asctime)s] %(levelname)s %(name)s: %(message)s", datefmt="%Y-%m-%d %H:%M:%S"
        ))
        root.addHandler(handler)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="main.py",
        description="Weakly-morphic and morphic finitely generated abelian groups",
        epilog="Group expressions: Z, Z^r, Z/n joined by '+', e.g. 'Z^2 + Z/6'.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="decide every predicate for one group")
    check.add_argument("expr", help="group expression, e.g. 'Z/2 + Z/4'")
    check.add_argument("--oracle", action="store_true", help="cross-check by brute force")
    check.add_argument("--json", action="store_true", help="emit one JSON line")
    check.add_argument("--timestamp", action="store_true", help="stamp the output")

    census = commands.add_parser("census", help="tabulate every group up to an order")
    census.add_argument("max_order", type=int)
    census.add_argument("--json", action="store_true", help="emit JSON lines")
    census.add_argument("--oracle", action="store_true", help="cross-check every row by brute force")
    census.add_argument("--timestamp", action="store_true", help="stamp the output")

    verify = commands.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", help="suite name, see 'suites'")
    verify.add_argument("--max-order", type=int, default=None)
    verify.add_argument("--json", action="store_true", help="emit one JSON object")

    commands.add_parser("suites", help="list verification suites")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logger.info("run: %s", " ".join(sys.argv[1:] if argv is None else argv))

    try:
        if args.command == "check":
            cmd_check(args.expr, oracle=args.oracle, as_json=args.json, timestamp=args.timestamp)
        elif args.command == "census":
            if args.max_order < 1:
                print("Error: MAX_ORDER must be >= 1", file=sys.stderr)
                return EXIT_USAGE
            cmd_census(args.max_order, as_json=args.json, oracle=args.oracle, timestamp=args.timestamp)
        elif args.command == "verify":
            if args.suite not in SUITES:
                print(f"Error: unknown suite '{args.suite}'\n\n{get_suites_text()}", file=sys.stderr)
                return EXIT_USAGE
            result = cmd_verify(args.suite, args.max_order, as_json=args.json)
            if not result.passed:
                return EXIT_DISAGREEMENT
        else:
            print(get_suites_text(), end="")
    except BudgetExceededError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except DisagreementError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    except MorphicError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    setup_logging()
    sys.exit(main())
