"""Command handlers behind the CLI.

Each file handler reads its input with aiofiles, runs the calculus work in a
worker thread and folds any :class:`GradiaError` into a :class:`FileResult`
carrying the error's exit code, so one bad file never hides the others.
"""

import asyncio
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Awaitable, Callable, Optional

from gradia.calculi.ddc.checker import DdcChecker
from gradia.calculi.ddc.erasure import erase
from gradia.calculi.ddc.pts import resolve_pts
from gradia.calculi.ddc.schemas import DdcConfig, PtsSignature
from gradia.calculi.ddc.semantics import evaluate as ddc_evaluate
from gradia.calculi.sdc.checker import SdcChecker, SealChecker
from gradia.calculi.sdc.semantics import evaluate as sdc_evaluate
from gradia.config import settings
from gradia.equality.joinability import def_eq
from gradia.equality.schemas import Verdict
from gradia.exceptions import ConfigError, GradiaError, ParseError, TranslationError
from gradia.harness.graph import run_suite, write_report
from gradia.harness.schemas import SuiteReport
from gradia.harness.suites import SUITES, suite_config
from gradia.lattice import Grade, Lattice, resolve_lattice
from gradia.schemas import FileResult, Invocation
from gradia.syntax.context import Context
from gradia.syntax.parser import Program, fragment_for, parse, parse_program
from gradia.syntax.printer import print_term
from gradia.syntax.terms import Term
from gradia.translate.embedding import lift_context, sdc_to_ddct
from gradia.translate.icc import ddc_to_icc, icc_star_erase, print_icc
from gradia.translate.sealing import seal_context, seal_to_sdc
from gradia.utils.file_utils import read_file
from gradia.utils.trace import Tracer

DEFAULT_LATTICES = {"sdc": "lmh", "seal": "lmh", "ddc": "li"}
TRANSLATIONS = {("seal", "sdc"), ("sdc", "ddc"), ("ddc", "icc"), ("ddc", "icc-erased")}


@dataclass(frozen=True)
class Environment:
    """Everything a file is interpreted in."""

    system: str
    lattice: Lattice
    pts: PtsSignature
    fuel: int

    def level(self, name: Optional[str]) -> Grade:
        """Resolve a grade name; ``C`` names the compile-time grade of any lattice."""
        if name is None:
            return self.lattice.bot
        if name == "C" and "C" not in self.lattice.elements:
            return self.lattice.c
        return self.lattice.grade(name)

    def show(self, program: Program, t: Term) -> str:
        return print_term(t, program.context.names(), self.pts.sorts)


def environment(inv: Invocation, path: Optional[Path] = None) -> Environment:
    """Resolve the lattice, signature and calculus for one input.

    Raises:
        ConfigError: If the lattice or signature cannot be loaded
    """
    if path is None:
        system = inv.source or inv.system or "ddc"
    else:
        system = inv.source or fragment_for(path, inv.system)
    lattice = resolve_lattice(inv.lattice or DEFAULT_LATTICES[system], settings.lattices_dir)
    pts = resolve_pts(inv.pts or "type-in-type", settings.pts_dir)
    return Environment(system, lattice, pts, inv.fuel or settings.default_fuel)


async def load_program(env: Environment, path: Path) -> Program:
    """Read and parse one source file.

    Raises:
        ConfigError: If the file cannot be read
        ParseError: If it does not parse
    """
    result = await read_file(str(path))
    if "error" in result:
        raise ConfigError(result["error"], "Unreadable")
    return parse_program(result["content"], env.lattice, env.system, env.pts.sorts)


async def _guarded(source: str, work: Callable[[], Awaitable[FileResult]]) -> FileResult:
    try:
        return await work()
    except GradiaError as e:
        logging.debug(f"{source}: {e}", exc_info=True)
        return FileResult(source=source, error=str(e), exit_code=e.exit_code)
    except Exception as e:
        logging.error(f"Unexpected error while processing {source}: {e}", exc_info=True)
        raise GradiaError(f"internal error while processing {source}: {e}", "Internal") from e


# check


def _check(env: Environment, program: Program, level_name: Optional[str], tracer: Optional[Tracer]) -> str:
    ctx, a = program.context, program.term
    level = env.level(level_name)
    if env.system == "ddc":
        checker = DdcChecker(DdcConfig(lattice=env.lattice, pts=env.pts, fuel=env.fuel), tracer)
        if level == env.lattice.top:
            # a top-level request goes through the truncated judgment at C
            ty = checker.check_truncated(ctx, a, level)
        else:
            ty = checker.check(ctx, a, level)
    else:
        cls = SealChecker if env.system == "seal" else SdcChecker
        ty = cls(env.lattice, tracer).check(ctx, a, level)
    return env.show(program, ty)


async def check_file(inv: Invocation, path: Path) -> FileResult:
    """Synthesize the type of the term in ``path``."""

    async def work() -> FileResult:
        env = environment(inv, path)
        program = await load_program(env, path)
        tracer = Tracer(f"{path.name} at {inv.level or 'bot'}") if inv.trace else None
        try:
            output = await asyncio.to_thread(_check, env, program, inv.level, tracer)
        except GradiaError as e:
            return FileResult(source=str(path), error=str(e), exit_code=e.exit_code, trace=tracer and tracer.root)
        return FileResult(source=str(path), output=output, trace=tracer and tracer.root)

    return await _guarded(str(path), work)


# eval / erase


def _evaluate(env: Environment, program: Program) -> str:
    if env.system == "ddc":
        value, steps = ddc_evaluate(env.lattice, program.term, env.fuel)
    else:
        value, steps = sdc_evaluate(program.term, env.fuel)
    logging.info(f"evaluated in {steps} steps")
    return env.show(program, value)


async def eval_file(inv: Invocation, path: Path) -> FileResult:
    """Print the call-by-name normal form of the term in ``path``."""

    async def work() -> FileResult:
        env = environment(inv, path)
        program = await load_program(env, path)
        output = await asyncio.to_thread(_evaluate, env, program)
        return FileResult(source=str(path), output=output)

    return await _guarded(str(path), work)


async def erase_file(inv: Invocation, path: Path) -> FileResult:
    """Print what an observer at ``--level`` can see of the term in ``path``."""

    async def work() -> FileResult:
        env = environment(inv, path)
        program = await load_program(env, path)
        erased = erase(env.lattice, program.term, env.level(inv.level))
        return FileResult(source=str(path), output=env.show(program, erased))

    return await _guarded(str(path), work)


# translate


def _translate(env: Environment, program: Program, target: str) -> str:
    a = program.term
    match env.system, target:
        case "seal", "sdc":
            return env.show(program, seal_to_sdc(a))
        case "sdc", "ddc":
            return env.show(program, sdc_to_ddct(env.lattice, a))
        case "ddc", "icc":
            return print_icc(ddc_to_icc(env.lattice, a), program.context.names())
        case "ddc", "icc-erased":
            return print_icc(icc_star_erase(ddc_to_icc(env.lattice, a)), program.context.names())
    raise TranslationError(f"no translation from {env.system} to {target}", "OutOfFragment")


async def translate_file(inv: Invocation, path: Path) -> FileResult:
    """Translate the term in ``path`` from ``--from`` to ``--to``."""

    async def work() -> FileResult:
        env = environment(inv, path)
        if inv.target is None or (env.system, inv.target) not in TRANSLATIONS:
            known = ", ".join(f"{s}->{t}" for s, t in sorted(TRANSLATIONS))
            raise ConfigError(f"unsupported translation {env.system}->{inv.target}; known: {known}", "NoTranslation")
        program = await load_program(env, path)
        output = await asyncio.to_thread(_translate, env, program, inv.target)
        return FileResult(source=str(path), output=output)

    return await _guarded(str(path), work)


# eq


def _second_operand(env: Environment, source: str, left: Program, path: Path) -> Term:
    """Parse the right-hand side of an equation in the scope of the left one."""
    try:
        program = parse_program(source, env.lattice, env.system, env.pts.sorts)
    except ParseError as e:
        if e.code != "UnboundVariable":
            raise
        return parse(source, env.lattice, env.system, env.pts.sorts, left.context.names())
    if program.context.bindings and program.context != left.context:
        raise ConfigError(f"{path} assumes a different context", "ContextMismatch")
    return program.term


def _as_ddc(env: Environment, ctx: Context, terms: tuple[Term, ...], level: Grade) -> tuple[Context, tuple[Term, ...]]:
    """Embed SDC and sealing operands into DDC, where parallel reduction is defined.

    Sealing terms go through SDC first; their variables are regraded at ``level``.
    """
    if env.system == "seal":
        ctx = seal_context(ctx, level)
        terms = tuple(seal_to_sdc(t) for t in terms)
    if env.system in ("sdc", "seal"):
        ctx = lift_context(env.lattice, ctx)
        terms = tuple(sdc_to_ddct(env.lattice, t) for t in terms)
    return ctx, terms


async def eq_files(inv: Invocation) -> FileResult:
    """Decide whether the two input terms are definitionally equal at ``--level``.

    The second file either repeats the assumptions of the first or has none.
    """
    label = " == ".join(str(p) for p in inv.inputs)

    async def work() -> FileResult:
        if len(inv.inputs) != 2:
            raise ConfigError(f"eq takes exactly two files, got {len(inv.inputs)}", "Usage")
        first, second = inv.inputs
        env = environment(inv, first)
        left = await load_program(env, first)
        result = await read_file(str(second))
        if "error" in result:
            raise ConfigError(result["error"], "Unreadable")
        right = _second_operand(env, result["content"], left, second)
        level = env.level(inv.level)
        ctx, (a, b) = _as_ddc(env, left.context, (left.term, right), level)
        joined = await asyncio.to_thread(def_eq, env.lattice, ctx.grades(), a, b, level, env.fuel)
        output = joined.verdict.value
        if joined.verdict is Verdict.FUEL_EXHAUSTED:
            return FileResult(source=label, output=output, error=f"no join within {env.fuel} rounds", exit_code=3)
        return FileResult(source=label, output=output)

    return await _guarded(label, work)


# noninterfere


async def run_suites(inv: Invocation) -> list[SuiteReport]:
    """Run ``--suite`` (every suite for ``all``) and write a detail file per run.

    Raises:
        ConfigError: If the suite, fragment, lattice or signature is invalid
    """
    lattice = resolve_lattice(inv.lattice, settings.lattices_dir) if inv.lattice else None
    pts = resolve_pts(inv.pts, settings.pts_dir) if inv.pts else None
    runs: list[tuple[str, Optional[str]]] = []
    if inv.suite == "all":
        for name, suite in SUITES.items():
            if inv.fragment:
                if inv.fragment in suite.fragments:
                    runs.append((name, inv.fragment))
            else:
                runs.extend((name, fragment) for fragment in suite.fragments)
    else:
        runs.append((inv.suite, inv.fragment))

    reports = []
    for name, fragment in runs:
        cfg = suite_config(
            name,
            fragment=fragment,
            lattice=lattice,
            pts=pts,
            seed=inv.seed,
            trials=inv.trials,
            max_size=inv.max_size,
            fuel=inv.fuel,
        )
        report = await run_suite(name, cfg, timing=inv.timing)
        path = await write_report(report, inv.report_dir)
        logging.info(f"wrote {path}")
        reports.append(report)
    return reports
