"""Property suites over generated samples.

A suite pairs a sample generator with a property. The property returns a
failure message, or None when it holds *or when its preconditions do not*:
shrinking relies on that, since a smaller sample that is no longer well
typed must not count as a counterexample.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Optional

from gradia.calculi.ddc.checker import DdcChecker
from gradia.calculi.ddc.pts import coc, type_in_type
from gradia.calculi.ddc.schemas import DdcConfig, PtsSignature
from gradia.calculi.ddc.semantics import ddc_step
from gradia.calculi.grading import grade
from gradia.calculi.sdc.checker import SdcChecker
from gradia.calculi.sdc.semantics import full_step, sdc_step
from gradia.equality.joinability import consistent, def_eq
from gradia.equality.parallel import par_step, parallel_reducts
from gradia.equality.schemas import Verdict
from gradia.exceptions import (
    ConfigError,
    FuelExhaustedError,
    GenerationStuck,
    GradiaError,
    TranslationError,
    TypeCheckError,
)
from gradia.harness.calculus import Calculus
from gradia.harness.enumerate import Enumerator
from gradia.harness.generate import Sample, SampleSource, trial_rng
from gradia.harness.oracle import DdcOracle, SimpleOracle, oracle_check
from gradia.harness.schemas import GenConfig, TrialResult
from gradia.harness.shrink import deletions, shrink
from gradia.lattice import Lattice, irrelevance, low_medium_high
from gradia.syntax.context import EMPTY, EMPTY_GRADES, Binding, Context
from gradia.syntax.printer import print_term
from gradia.syntax.terms import Term, UnitTy, shift, subst
from gradia.translate.embedding import lift_context, sdc_to_ddct
from gradia.translate.icc import ddc_to_icc, icc_reachable, icc_star_erase
from gradia.translate.sealing import seal_context, seal_to_sdc

Property = Callable[[Calculus, Sample], Optional[str]]
Generator = Callable[[SampleSource], Sample]


@dataclass(frozen=True)
class Suite:
    name: str
    fragments: tuple[str, ...]
    generate: Generator
    check: Property
    pts: str = "type-in-type"
    description: str = ""


# Shared pieces


def _typed_closed(source: SampleSource) -> Sample:
    return source.typed(free_vars=0)


def _typed_open(source: SampleSource) -> Sample:
    return source.typed(free_vars=max(source.cfg.free_vars, 2))


def _same(calc: Calculus, ctx: Context, found: Optional[Term], expected: Term) -> Optional[bool]:
    if found is None:
        return False
    return calc.same_type(ctx, found, expected)


def _retyped(calc: Calculus, ctx: Context, a: Term, level, expected: Term, what: str) -> Optional[str]:
    found = calc.synth(ctx, a, level)
    verdict = _same(calc, ctx, found, expected)
    if verdict is None:
        return None
    if found is None:
        return f"{what}: no longer well typed at {level}"
    if not verdict:
        return f"{what}: type changed to {print_term(found, ctx.names())}"
    return None


# Non-interference and erasure


def _hidden_pair(calc: Calculus, sample: Sample) -> Optional[tuple[Term, ...]]:
    """Instantiate ``b`` with each filler; None when the sample is not well formed."""
    b, *fillers = sample.terms
    a_ty, _ = sample.types
    (l0,) = sample.grades
    inner = EMPTY.extend("x", l0, a_ty)
    if calc.synth(inner, b, sample.level) is None:
        return None
    for v in fillers:
        if not _same(calc, EMPTY, calc.synth_truncated(EMPTY, v, l0), a_ty):
            return None
    return tuple(subst(b, v) for v in fillers)


def noninterference(calc: Calculus, sample: Sample) -> Optional[str]:
    pair = _hidden_pair(calc, sample)
    if pair is None:
        return None
    a1, a2 = pair
    k = sample.level
    if not calc.indist(EMPTY_GRADES, a1, a2, k):
        return f"terms differing only in a {sample.grades[0]} value are distinguishable at {k}"
    for n in range(calc.cfg.steps):
        s1, s2 = calc.step(a1), calc.step(a2)
        if (s1 is None) != (s2 is None):
            return f"after {n} steps only one side can step"
        if s1 is None:
            if calc.is_value(a1) != calc.is_value(a2):
                return f"after {n} steps only one side is a value"
            return None
        a1, a2 = s1, s2
        if not calc.indist(EMPTY_GRADES, a1, a2, k):
            return f"indistinguishability at {k} lost after {n + 1} steps"
    return None


def erasure(calc: Calculus, sample: Sample) -> Optional[str]:
    if len(sample.terms) > 1:
        pair = _hidden_pair(calc, sample)
        if pair is None:
            return None
        e1, e2 = (calc.erase(a, sample.level) for a in pair)
        if e1 != e2:
            return f"indistinguishable terms erase differently at {sample.level}"
        return None
    (a,) = sample.terms
    level = sample.level
    if calc.synth(sample.ctx, a, level) is None:
        return None
    if not calc.indist(sample.ctx.grades(), a, calc.erase(a, level), level):
        return f"term and its erasure are distinguishable at {level}"
    for n in range(calc.cfg.steps):
        erased = calc.erase(a, level)
        nxt = calc.step(a)
        if nxt is None:
            if calc.is_value(a) and not calc.is_value(erased):
                return "a value erases to a non-value"
            return None
        if calc.step(erased) != calc.erase(nxt, level):
            return f"erasure does not commute with step {n + 1}"
        a = nxt
    return None


def _erasure_sample(source: SampleSource) -> Sample:
    if source.rng.random() < 0.5:
        return source.hole(2)
    return source.typed(free_vars=0)


# Soundness


def preservation(calc: Calculus, sample: Sample) -> Optional[str]:
    (a,) = sample.terms
    ty = calc.synth(sample.ctx, a, sample.level)
    if ty is None:
        return None
    for n in range(calc.cfg.steps):
        nxt = calc.step(a)
        if nxt is None:
            return None
        problem = _retyped(calc, sample.ctx, nxt, sample.level, ty, f"step {n + 1}")
        if problem:
            return problem
        a = nxt
    return None


def progress(calc: Calculus, sample: Sample) -> Optional[str]:
    (a,) = sample.terms
    if calc.synth(sample.ctx, a, sample.level) is None:
        return None
    for n in range(calc.cfg.steps):
        nxt = calc.step(a)
        if nxt is None:
            return None if calc.is_value(a) else f"stuck after {n} steps"
        if calc.synth(sample.ctx, nxt, sample.level) is None:
            return None
        a = nxt
    return None


# Structural lemmas


def subsumption(calc: Calculus, sample: Sample) -> Optional[str]:
    (a,) = sample.terms
    ty = calc.synth(sample.ctx, a, sample.level)
    if ty is None:
        return None
    for k in calc.levels():
        if calc.lattice.leq(sample.level, k):
            problem = _retyped(calc, sample.ctx, a, k, ty, f"raised to {k}")
            if problem:
                return problem
    return None


def narrowing(calc: Calculus, sample: Sample) -> Optional[str]:
    (a,) = sample.terms
    ctx = sample.ctx
    ty = calc.synth(ctx, a, sample.level)
    if ty is None:
        return None
    for i in range(len(ctx)):
        g = ctx.lookup(i).grade
        for lower_g in calc.lattice.below(g):
            if lower_g != g:
                problem = _retyped(calc, ctx.with_grade(i, lower_g), a, sample.level, ty, f"variable {i} lowered to {lower_g}")
                if problem:
                    return problem
    return None


def restricted_upgrading(calc: Calculus, sample: Sample) -> Optional[str]:
    (a,) = sample.terms
    ctx = sample.ctx
    lat = calc.lattice
    ty = calc.synth(ctx, a, sample.level)
    if ty is None:
        return None
    for i in range(len(ctx)):
        g = ctx.lookup(i).grade
        for l1 in lat.below(sample.level):
            raised = lat.join(g, l1)
            if raised != g:
                problem = _retyped(calc, ctx.with_grade(i, raised), a, sample.level, ty, f"variable {i} raised to {raised}")
                if problem:
                    return problem
    return None


def weaken(ctx: Context, depth: int, binding: Binding) -> Context:
    """Insert ``binding`` under the innermost ``depth`` bindings of ``ctx``."""
    n = len(ctx.bindings)
    outer, inner = ctx.bindings[: n - depth], ctx.bindings[n - depth :]
    moved = tuple(Binding(b.name, b.grade, shift(b.type, 1, m)) for m, b in enumerate(inner))
    return Context(outer + (binding,) + moved)


def weakening(calc: Calculus, sample: Sample) -> Optional[str]:
    (a,) = sample.terms
    ctx = sample.ctx
    ty = calc.synth(ctx, a, sample.level)
    if ty is None:
        return None
    unit = UnitTy()
    for depth in range(len(ctx) + 1):
        for g in (calc.lattice.bot, calc.lattice.top):
            bigger = weaken(ctx, depth, Binding("w", g, unit))
            problem = _retyped(calc, bigger, shift(a, 1, depth), sample.level, shift(ty, 1, depth), f"weakened at depth {depth}")
            if problem:
                return problem
    return None


def substitution(calc: Calculus, sample: Sample) -> Optional[str]:
    b, v = sample.terms
    a_ty, _ = sample.types
    (l0,) = sample.grades
    inner = EMPTY.extend("x", l0, a_ty)
    b_ty = calc.synth(inner, b, sample.level)
    if b_ty is None or not _same(calc, EMPTY, calc.synth_truncated(EMPTY, v, l0), a_ty):
        return None
    return _retyped(calc, EMPTY, subst(b, v), sample.level, subst(b_ty, v), "after substitution")


def typing_grading(calc: Calculus, sample: Sample) -> Optional[str]:
    (a,) = sample.terms
    if calc.synth(sample.ctx, a, sample.level) is None:
        return None
    if not calc.grade(sample.ctx.grades(), a, sample.level):
        return f"well typed at {sample.level} but not well graded"
    return None


def regularity(calc: Calculus, sample: Sample) -> Optional[str]:
    (a,) = sample.terms
    ty = calc.synth(sample.ctx, a, sample.level)
    if ty is None:
        return None
    try:
        calc.checkers.ddc.sort_of_type(sample.ctx, ty)
    except TypeCheckError as e:
        return f"synthesized type is not a type: {e}"
    except FuelExhaustedError:
        return None
    return None


# Equality


def defeq_consistency(calc: Calculus, sample: Sample) -> Optional[str]:
    a, b = sample.terms
    lat = calc.lattice
    result = def_eq(lat, EMPTY_GRADES, a, b, lat.c, fuel=calc.cfg.fuel)
    if result.verdict is Verdict.FUEL_EXHAUSTED:
        return f"joinability undecided after {result.steps_used} rounds"
    if result.verdict is Verdict.EQUAL and not consistent(calc.whnf(a), calc.whnf(b)):
        return "types with different head forms judged equal"
    return None


def indist_equivalence(calc: Calculus, sample: Sample) -> Optional[str]:
    terms = _hidden_pair(calc, sample)
    if terms is None:
        return None
    k = sample.level
    a1, a2, a3 = terms
    if not calc.grade(EMPTY_GRADES, a1, k) or not calc.indist(EMPTY_GRADES, a1, a1, k):
        return "a well-typed term is not indistinguishable from itself"
    if calc.indist(EMPTY_GRADES, a1, a2, k) != calc.indist(EMPTY_GRADES, a2, a1, k):
        return "indistinguishability is not symmetric"
    if calc.indist(EMPTY_GRADES, a1, a2, k) and calc.indist(EMPTY_GRADES, a2, a3, k):
        if not calc.indist(EMPTY_GRADES, a1, a3, k):
            return "indistinguishability is not transitive"
    return None


def triangle(calc: Calculus, sample: Sample, limit: int = 48) -> Optional[str]:
    (a,) = sample.terms
    lat = calc.lattice
    developed = par_step(lat, a, lat.top)
    reducts = sorted(parallel_reducts(lat, a, lat.top), key=lambda t: print_term(t))
    for b in reducts[:limit]:
        if developed not in parallel_reducts(lat, b, lat.top):
            return f"the complete development is not reachable from {print_term(b)}"
    return None


# Checker against oracle


def _oracle_sample(source: SampleSource) -> Sample:
    sample = source.typed()
    if source.rng.random() < 0.5:
        options = list(deletions(sample.terms[0]))
        if options:
            return sample.with_terms((source.rng.choice(options),))
    return sample


def oracle_agreement(calc: Calculus, sample: Sample) -> Optional[str]:
    (a,) = sample.terms
    if calc.dependent:
        oracle = DdcOracle(DdcConfig(lattice=calc.lattice, pts=calc.cfg.pts, fuel=calc.cfg.fuel))
    else:
        oracle = SimpleOracle(calc.lattice, sealing=calc.fragment == "seal")
    try:
        found = calc.checker.check(sample.ctx, a, sample.level)
    except TypeCheckError:
        found = None
    except FuelExhaustedError:
        return None
    expected = oracle_check(oracle, sample.ctx, a, sample.level)
    if found != expected:
        names = sample.ctx.names()
        shown = lambda t: "rejected" if t is None else print_term(t, names)  # noqa: E731
        return f"checker says {shown(found)}, rules say {shown(expected)}"
    return None


# Translations


def translation_sim(calc: Calculus, sample: Sample) -> Optional[str]:
    if calc.fragment == "seal":
        return _sealing_sim(calc, sample)
    if calc.fragment == "sdc":
        return _embedding_sim(calc, sample)
    return _icc_sim(calc, sample)


def _sealing_sim(calc: Calculus, sample: Sample) -> Optional[str]:
    (a,) = sample.terms
    ctx, level = sample.ctx, sample.level
    ty = calc.synth(ctx, a, level)
    if ty is None:
        return None
    target = SdcChecker(calc.lattice)
    try:
        found = target.check(seal_context(ctx, level), seal_to_sdc(a), level)
    except TypeCheckError as e:
        return f"translation is ill typed: {e}"
    if found != seal_to_sdc(ty):
        return "translation changes the type"
    for n in range(calc.cfg.steps):
        source_steps = full_step(a)
        image = seal_to_sdc(a)
        target_steps = set(full_step(image))
        translated = [seal_to_sdc(r) for r in source_steps]
        if any(t not in target_steps for t in translated):
            return f"a source reduct has no matching target step at step {n}"
        if any(t not in set(translated) for t in target_steps):
            return f"a target reduct has no source counterpart at step {n}"
        if not source_steps:
            return None
        a = source_steps[0]
    return None


def _embedding_sim(calc: Calculus, sample: Sample) -> Optional[str]:
    (a,) = sample.terms
    ctx, level = sample.ctx, sample.level
    ty = calc.synth(ctx, a, level)
    if ty is None:
        return None
    lat = calc.lattice.with_c(calc.lattice.top)
    target = DdcChecker(DdcConfig(lattice=lat, pts=calc.cfg.pts, fuel=calc.cfg.fuel))
    image = sdc_to_ddct(lat, a)
    try:
        found = target.check(lift_context(lat, ctx), image, level)
    except TypeCheckError as e:
        return f"translation is ill typed: {e}"
    except FuelExhaustedError:
        return None
    if found != sdc_to_ddct(lat, ty):
        return "translation changes the type"
    for n in range(calc.cfg.steps):
        nxt, image_nxt = sdc_step(a), ddc_step(lat, image)
        if (nxt is None) != (image_nxt is None):
            return f"only one side steps at step {n + 1}"
        if nxt is None:
            return None
        if sdc_to_ddct(lat, nxt) != image_nxt:
            return f"step {n + 1} leaves the image of the translation"
        a, image = nxt, image_nxt
    return None


def _icc_sim(calc: Calculus, sample: Sample) -> Optional[str]:
    (a,) = sample.terms
    lat = calc.lattice
    if not calc.grade(EMPTY_GRADES, a, lat.c):
        return None
    b = par_step(lat, a, lat.c)
    if b == a:
        return None
    try:
        src, dst = (icc_star_erase(ddc_to_icc(lat, t)) for t in (a, b))
    except TranslationError:
        return None
    if icc_reachable(src, dst) is None:
        return "the erased extraction does not reduce to the extracted reduct"
    return None


@lru_cache(maxsize=8)
def _pi_terms(lattice: Lattice, sorts: tuple[str, ...], bound: int) -> tuple[Term, ...]:
    """Closed Pi-fragment terms, well graded at C, that parallel-reduce."""
    enum = Enumerator("ddc-pi", lattice, sorts)
    return tuple(
        t
        for t in enum.up_to(bound)
        if par_step(lattice, t, lattice.c) != t and grade(lattice, EMPTY_GRADES, t, lattice.c)
    )


def _translation_sample(source: SampleSource) -> Sample:
    if source.cfg.fragment in ("ddc", "ddc-pi"):
        pool = _pi_terms(source.lattice, tuple(source.cfg.pts.sorts), min(source.cfg.max_size, 6))
        if not pool:
            return source.typed()
        return Sample(EMPTY, (source.rng.choice(pool),), source.lattice.c)
    return source.typed()


SUITES: dict[str, Suite] = {
    s.name: s
    for s in (
        Suite("noninterference", ("sdc", "ddc"), lambda src: src.hole(2), noninterference,
              description="indistinguishable terms step to indistinguishable terms"),
        Suite("erasure", ("ddc", "sdc"), _erasure_sample, erasure,
              description="erasure commutes with evaluation and is canonical"),
        Suite("preservation", ("sdc", "seal", "ddc"), _typed_closed, preservation,
              description="evaluation preserves types"),
        Suite("progress", ("sdc", "seal", "ddc"), _typed_closed, progress,
              description="closed well-typed terms are values or step"),
        Suite("subsumption", ("sdc", "ddc"), _typed_open, subsumption,
              description="judgments hold at every higher level"),
        Suite("narrowing", ("sdc", "ddc"), _typed_open, narrowing,
              description="lowering variable grades keeps typing"),
        Suite("restricted-upgrading", ("sdc", "ddc"), _typed_open, restricted_upgrading,
              description="raising a variable up to the level keeps typing"),
        Suite("weakening", ("sdc", "ddc"), _typed_open, weakening,
              description="extra bindings keep typing"),
        Suite("substitution", ("sdc", "ddc"), lambda src: src.hole(1), substitution,
              description="substituting well-typed values keeps typing"),
        Suite("typing-grading", ("sdc", "ddc"), _typed_open, typing_grading,
              description="well-typed terms are well graded"),
        Suite("regularity", ("ddc",), _typed_open, regularity,
              description="synthesized types are well formed"),
        Suite("translation-sim", ("sdc", "seal", "ddc-pi"), _translation_sample, translation_sim,
              description="translations preserve typing and simulate reduction"),
        Suite("defeq-consistency", ("ddc",), lambda src: src.type_pair(), defeq_consistency, pts="coc",
              description="joinability never equates different head forms"),
        Suite("indist-equivalence", ("sdc", "ddc"), lambda src: src.hole(3), indist_equivalence,
              description="indistinguishability is an equivalence on well-graded terms"),
        Suite("oracle", ("sdc", "seal", "ddc"), _oracle_sample, oracle_agreement,
              description="the checker agrees with the relational rules"),
        Suite("triangle", ("ddc",), _typed_closed, triangle,
              description="the complete development closes every parallel step"),
    )
}


def get_suite(name: str) -> Suite:
    try:
        return SUITES[name]
    except KeyError as e:
        known = ", ".join(SUITES)
        raise ConfigError(f"unknown suite {name!r}; known suites: {known}", "UnknownSuite") from e


def verdict(suite: Suite, calc: Calculus, sample: Sample) -> Optional[str]:
    """Run the property; unexpected errors count as failures."""
    try:
        return suite.check(calc, sample)
    except GradiaError as e:
        logging.debug(f"{suite.name} raised {e}")
        return f"{type(e).__name__}: {e}"


def _show(sample: Sample) -> list[str]:
    names = sample.ctx.names()
    scopes = sample.scopes or tuple(() for _ in sample.terms)
    shown = [print_term(t, names + scope) for t, scope in zip(sample.terms, scopes)]
    if names:
        shown.insert(0, "context: " + ", ".join(f"{b.name} :^{b.grade}" for b in sample.ctx))
    return shown


def _detail(suite: Suite, calc: Calculus, sample: Sample, fallback: str) -> str:
    try:
        return verdict(suite, calc, sample) or fallback
    except Exception as e:
        return f"crash: {type(e).__name__}: {e}"


def _still_fails(suite: Suite, calc: Calculus, sample: Sample) -> bool:
    try:
        return verdict(suite, calc, sample) is not None
    except Exception:
        return True


def run_trial(suite: Suite, calc: Calculus, index: int) -> TrialResult:
    """Generate, check and, on failure, shrink one trial."""
    source = SampleSource(calc.cfg, trial_rng(calc.cfg.seed, index), calc.checkers)
    try:
        sample = suite.generate(source)
    except GenerationStuck as e:
        return TrialResult(index=index, status="skipped", detail=e.detail)
    try:
        problem = verdict(suite, calc, sample)
    except Exception as e:
        logging.exception(f"{suite.name} trial {index} crashed")
        return TrialResult(index=index, status="failed", detail=f"crash: {type(e).__name__}: {e}", counterexample=_show(sample))
    if problem is None:
        return TrialResult(index=index, status="passed")
    logging.info(f"{suite.name} trial {index} failed: {problem}; shrinking")
    smallest = shrink(sample, lambda s: _still_fails(suite, calc, s))
    return TrialResult(
        index=index,
        status="failed",
        detail=_detail(suite, calc, smallest, problem),
        counterexample=_show(smallest),
    )


def suite_config(
    name: str,
    fragment: Optional[str] = None,
    lattice: Optional[Lattice] = None,
    pts: Optional[PtsSignature] = None,
    **fields: Any,
) -> GenConfig:
    """Fill in the defaults a suite runs with when the caller leaves them out.

    Simple fragments default to the three-point chain, dependent ones to the
    irrelevance lattice whose C sits strictly below top.

    Raises:
        ConfigError: If the suite is unknown or does not run on ``fragment``
    """
    suite = get_suite(name)
    fragment = fragment or suite.fragments[0]
    if fragment not in suite.fragments:
        raise ConfigError(
            f"suite {name} runs on {', '.join(suite.fragments)}, not {fragment}", "UnsupportedFragment"
        )
    if lattice is None:
        lattice = irrelevance() if fragment in ("ddc", "ddc-pi") else low_medium_high()
    if pts is None:
        pts = coc() if suite.pts == "coc" else type_in_type()
    given = {k: v for k, v in fields.items() if v is not None}
    return GenConfig(lattice=lattice, pts=pts, fragment=fragment, **given)
