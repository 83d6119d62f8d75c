"""Command-line front end.

Exit codes: 0 ok, 1 type or translation error, 2 parse error, 3 fuel
exhausted, 4 bad lattice, signature or usage, 5 property-suite failure.
"""

import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from gradia.commands import check_file, eq_files, erase_file, eval_file, run_suites, translate_file
from gradia.config import settings
from gradia.exceptions import GradiaError, SuiteFailure
from gradia.harness.schemas import SuiteReport
from gradia.schemas import FileResult, Invocation

console = Console(markup=False, highlight=False, soft_wrap=True)
err_console = Console(stderr=True, markup=False, highlight=False, soft_wrap=True)

FILE_COMMANDS = {
    "check": check_file,
    "eval": eval_file,
    "erase": erase_file,
    "translate": translate_file,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lattice", help="lattice file or built-in name (li, lmh, two_point, diamond)")
    common.add_argument("--pts", help="PTS signature file or built-in name (type-in-type, coc)")
    common.add_argument("--level", help="observer grade; bot, top and C are accepted in every lattice")
    common.add_argument("--fuel", type=int, help="evaluation and equality fuel")
    common.add_argument("--system", choices=["sdc", "seal", "ddc"], help="calculus; defaults by file extension")
    common.add_argument("-v", "--verbose", action="count", default=0, help="more logging (repeatable)")

    parser = argparse.ArgumentParser(prog="gradia", description="Graded dependency calculi toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", parents=[common], help="synthesize the type of each file")
    check.add_argument("inputs", nargs="+", type=Path)
    check.add_argument("--trace", action="store_true", help="print the derivation tree")

    ev = sub.add_parser("eval", parents=[common], help="call-by-name normal form of each file")
    ev.add_argument("inputs", nargs="+", type=Path)

    er = sub.add_parser("erase", parents=[common], help="erase what --level cannot observe")
    er.add_argument("inputs", nargs="+", type=Path)

    eq = sub.add_parser("eq", parents=[common], help="definitional equality of two files at --level")
    eq.add_argument("inputs", nargs=2, type=Path)

    tr = sub.add_parser("translate", parents=[common], help="translate between calculi")
    tr.add_argument("inputs", nargs="+", type=Path)
    tr.add_argument("--from", dest="source", choices=["sdc", "seal", "ddc"], help="source calculus")
    tr.add_argument("--to", dest="target", required=True, choices=["sdc", "ddc", "icc", "icc-erased"])

    ni = sub.add_parser("noninterfere", parents=[common], help="run property suites")
    ni.add_argument("--suite", default="noninterference", help="suite name, or 'all'")
    ni.add_argument("--fragment", choices=["sdc", "seal", "ddc", "ddc-pi"])
    ni.add_argument("--seed", type=int)
    ni.add_argument("--trials", type=int)
    ni.add_argument("--max-size", dest="max_size", type=int)
    ni.add_argument("--timing", action="store_true", help="report wall time")
    ni.add_argument("--report-dir", dest="report_dir", type=Path)
    return parser


def configure_logging(verbose: int) -> None:
    level = settings.log_level.upper()
    if verbose == 1:
        level = "INFO"
    elif verbose > 1:
        level = "DEBUG"
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_time=False, show_path=False, markup=False)],
        force=True,
    )


def print_file_results(results: Sequence[FileResult], multiple: bool) -> None:
    for result in results:
        prefix = f"{result.source}: " if multiple else ""
        if result.trace is not None:
            console.print(result.trace)
        if result.output is not None:
            console.print(prefix + result.output)
        if result.error is not None:
            err_console.print(prefix + result.error)


def print_reports(reports: Sequence[SuiteReport], timing: bool) -> None:
    table = Table(title="property suites")
    for column in ("suite", "fragment", "lattice", "passed", "failed", "skipped"):
        table.add_column(column)
    if timing:
        table.add_column("seconds")
    for r in reports:
        row = [r.suite, r.fragment, r.lattice, str(r.passed), str(r.failed), str(r.skipped)]
        if timing:
            row.append(f"{r.elapsed or 0.0:.2f}")
        table.add_row(*row)
    console.print(table)
    for r in reports:
        for failure in r.failures:
            console.print(f"{r.suite} [{r.fragment}] trial {failure.index}: {failure.detail}")
            for line in failure.counterexample or []:
                console.print(f"    {line}")


async def run(inv: Invocation) -> int:
    """Execute one invocation and return its exit code."""
    if inv.command == "noninterfere":
        reports = await run_suites(inv)
        print_reports(reports, inv.timing)
        return SuiteFailure.exit_code if any(not r.ok for r in reports) else 0

    if inv.command == "eq":
        results = [await eq_files(inv)]
    else:
        handler = FILE_COMMANDS[inv.command]
        results = await asyncio.gather(*(handler(inv, path) for path in inv.inputs))
    print_file_results(results, multiple=len(results) > 1)
    return next((r.exit_code for r in results if r.exit_code), 0)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        inv = Invocation(**{k: v for k, v in vars(args).items() if v is not None})
    except ValidationError as e:
        err_console.print(f"Usage: {e.errors()[0]['loc'][0]}: {e.errors()[0]['msg']}")
        return 4
    try:
        return asyncio.run(run(inv))
    except GradiaError as e:
        logging.debug("command failed", exc_info=True)
        err_console.print(str(e))
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
