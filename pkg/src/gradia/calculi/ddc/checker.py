"""Bidirectional type checking for DDC over a PTS signature.

Every judgment is made at a level ``l <= C``. A premise demanded at ``top``
is discharged by truncation: the premise is checked at ``C`` after meeting
every context grade with ``C``, which is how compile-time-only variables
become usable in types. Types are compared by joinability at ``C``.
"""

import logging
import threading
from typing import Optional

from gradia.calculi.base import BaseChecker
from gradia.calculi.ddc.schemas import DdcConfig
from gradia.calculi.ddc.semantics import whnf
from gradia.equality.joinability import def_eq
from gradia.equality.schemas import Verdict
from gradia.exceptions import FuelExhaustedError
from gradia.lattice import Grade
from gradia.syntax.context import Context
from gradia.syntax.terms import (
    Ann,
    Case,
    GApp,
    GLam,
    GPair,
    Inj1,
    Inj2,
    LetPair,
    Path,
    Pi,
    Sigma,
    Sort,
    Sum,
    Term,
    UnitTm,
    UnitTy,
    Var,
    lower,
    mentions,
    shift,
    subst,
)
from gradia.utils.trace import Tracer

_RULES = {
    Var: "T-Var",
    Sort: "T-Type",
    UnitTy: "T-UnitTy",
    UnitTm: "T-Unit",
    Pi: "T-Pi",
    Sigma: "T-WSigma",
    Sum: "T-Sum",
    GLam: "T-AbsC",
    GApp: "T-AppC",
    GPair: "T-WPairC",
    LetPair: "T-LetPairC",
    Inj1: "T-InjOne",
    Inj2: "T-InjTwo",
    Case: "T-CaseC",
    Ann: "T-Ann",
}


class DdcChecker(BaseChecker):
    """Checks ``ctx |- a :^l A`` in DDC; DDC-top is the instance with C = top."""

    fragment = "ddc"

    def __init__(
        self,
        config: DdcConfig,
        tracer: Optional[Tracer] = None,
        cancel: Optional[threading.Event] = None,
    ):
        super().__init__(config.lattice, tracer)
        self.config = config
        self.pts = config.pts
        self.c = config.lattice.c
        self.cancel = cancel

    # Public API

    def check(self, ctx: Context, a: Term, level: Grade) -> Term:
        """Synthesize the type of ``a`` at ``level``, which must be below C.

        Raises:
            TypeCheckError: Naming the first rule whose premise failed
            FuelExhaustedError: If normalisation or conversion ran out of fuel
        """
        ty = self.infer(ctx, a, level, ())
        logging.debug(f"DDC synthesized {self.show(ty, ctx)} at {level}")
        return ty

    def check_truncated(self, ctx: Context, a: Term, level: Grade) -> Term:
        """The truncated judgment: at ``top`` this checks at C under C meet ctx."""
        return self.infer_truncated(ctx, a, level, ())

    def check_against(self, ctx: Context, a: Term, ty: Term, level: Grade) -> None:
        self.against(ctx, a, ty, level, ())

    def sort_of_type(self, ctx: Context, ty: Term) -> str:
        """Sort of a type, checked by the truncated judgment at ``top``."""
        return self.sort_of_truncated(ctx, ty, self.lattice.top, ())

    # Helpers

    def _bounded(self, a: Term, level: Grade, path: Path) -> None:
        if not self.lattice.leq(level, self.c):
            raise self.fail(
                _RULES.get(type(a), "T-Form"),
                "LevelAboveC",
                f"judgments are made at or below C = {self.c}, not at {level}",
                path,
                self.c,
                level,
            )

    def _truncation(self, ctx: Context) -> Context:
        return ctx.truncate(self.lattice, self.c)

    def _describe_truncation(self, ctx: Context):
        def describe() -> str:
            trunc = self._truncation(ctx)
            entries = ", ".join(f"{b.name}:^{b.grade}" for b in trunc)
            return f"C meet ctx = [{entries}] at {self.c}"

        return describe

    def whnf(self, t: Term, ctx: Context, path: Path) -> Term:
        try:
            return whnf(self.lattice, t, self.config.fuel)
        except FuelExhaustedError as e:
            raise FuelExhaustedError(
                f"{e.detail} while normalising {self.show(t, ctx)}", "FuelExhausted"
            ) from e

    def convert(self, ctx: Context, found: Term, expected: Term, path: Path, rule: str = "T-ConvC") -> None:
        """Require ``found == expected`` at C under the truncated context."""
        if found == expected:
            return
        with self.tracer.rule("T-ConvC", lambda: f"{self.show(found, ctx)} == {self.show(expected, ctx)} at {self.c}"):
            result = def_eq(
                self.lattice,
                self._truncation(ctx).grades(),
                found,
                expected,
                self.c,
                fuel=self.config.fuel,
                window=self.config.join_window,
                cancel=self.cancel,
            )
        if result.verdict is Verdict.EQUAL:
            return
        if result.verdict is Verdict.FUEL_EXHAUSTED:
            raise FuelExhaustedError(
                f"conversion of {self.show(found, ctx)} and {self.show(expected, ctx)} "
                f"undecided after {result.steps_used} rounds",
                "FuelExhausted",
            )
        nf_found, nf_expected = result.reducts
        raise self.fail(
            rule,
            "ConversionFailed",
            f"{self.show(nf_found, ctx)} is not equal to {self.show(nf_expected, ctx)} at {self.c}",
            path,
            nf_expected,
            nf_found,
        )

    def _expect(self, rule: str, shape: type, ty: Term, what: str, ctx: Context, path: Path) -> Term:
        head = self.whnf(ty, ctx, path)
        if not isinstance(head, shape):
            raise self.fail(rule, "TypeMismatch", f"expected {what}, found {self.show(ty, ctx)}", path, what, ty)
        return head

    def sort_of(self, ctx: Context, ty: Term, level: Grade, path: Path) -> str:
        head = self.whnf(self.infer(ctx, ty, level, path), ctx, path)
        if not isinstance(head, Sort):
            raise self.fail(
                _RULES.get(type(ty), "T-Form"),
                "NotAType",
                f"{self.show(ty, ctx)} is not a type",
                path,
                "a sort",
                head,
            )
        return head.name

    def sort_of_truncated(self, ctx: Context, ty: Term, level: Grade, path: Path) -> str:
        head = self.whnf(self.infer_truncated(ctx, ty, level, path), ctx, path)
        if not isinstance(head, Sort):
            raise self.fail(
                _RULES.get(type(ty), "T-Form"), "NotAType", f"{self.show(ty, ctx)} is not a type", path, "a sort", head
            )
        return head.name

    def formation(self, ctx: Context, ty: Term, path: Path) -> None:
        """Check a synthesized Pi or Sigma at C after truncating."""
        with self.tracer.rule("CT-Top", self._describe_truncation(ctx)):
            self.sort_of(self._truncation(ctx), ty, self.c, path)

    # Truncated judgments

    def infer_truncated(self, ctx: Context, a: Term, level: Grade, path: Path) -> Term:
        lat = self.lattice
        if lat.leq(level, self.c):
            with self.tracer.rule("CT-Leq"):
                return self.infer(ctx, a, level, path)
        if level == lat.top:
            with self.tracer.rule("CT-Top", self._describe_truncation(ctx)):
                return self.infer(self._truncation(ctx), a, self.c, path)
        self._bounded(a, level, path)
        raise AssertionError("unreachable")

    def against_truncated(self, ctx: Context, a: Term, ty: Term, level: Grade, path: Path) -> None:
        lat = self.lattice
        if lat.leq(level, self.c):
            with self.tracer.rule("CT-Leq"):
                self.against(ctx, a, ty, level, path)
            return
        if level == lat.top:
            with self.tracer.rule("CT-Top", self._describe_truncation(ctx)):
                self.against(self._truncation(ctx), a, ty, self.c, path)
            return
        self._bounded(a, level, path)

    # Synthesis

    def infer(self, ctx: Context, a: Term, level: Grade, path: Path) -> Term:
        self._bounded(a, level, path)
        rule = _RULES.get(type(a))
        if rule is None:
            raise self.not_in_fragment("T-Form", a, path)
        with self.tracer.rule(rule, self.describe(ctx, a, level)):
            return self._infer(ctx, a, level, path, rule)

    def _infer(self, ctx: Context, a: Term, level: Grade, path: Path, rule: str) -> Term:
        lat = self.lattice
        match a:
            case Var(index=i):
                if not ctx.has(i):
                    raise self.fail(rule, "UnboundVariable", f"index {i} is not bound", path)
                binding = ctx.lookup(i)
                if not lat.leq(binding.grade, level):
                    raise self.fail(
                        rule,
                        "VarGradeTooHigh",
                        f"{binding.name} is graded {binding.grade}, not visible at {level}",
                        path,
                        level,
                        binding.grade,
                    )
                return binding.type
            case Sort(name=s):
                above = self.pts.axiom(s) if s in self.pts.sorts else None
                if above is None:
                    raise self.fail(rule, "NoAxiom", f"no axiom types the sort {s}", path)
                return Sort(above)
            case UnitTy():
                return Sort(self.pts.unit_sort)
            case UnitTm():
                return UnitTy()
            case Pi(domain=dom, body=body, name=x) | Sigma(domain=dom, body=body, name=x):
                s1 = self.sort_of(ctx, dom, level, path + ("domain",))
                s2 = self.sort_of(ctx.extend(x, level, dom), body, level, path + ("body",))
                s3 = self.pts.rule(s1, s2)
                if s3 is None:
                    raise self.fail(rule, "NoRule", f"no rule ({s1}, {s2}, _) in {self.pts.name}", path)
                return Sort(s3)
            case Sum(left=l, right=r):
                s1 = self.sort_of(ctx, l, level, path + ("left",))
                s2 = self.sort_of(ctx, r, level, path + ("right",))
                if s1 != s2:
                    raise self.fail(rule, "TypeMismatch", f"sum of a {s1} and a {s2}", path, Sort(s1), Sort(s2))
                return Sort(s1)
            case GLam(grade=g, domain=dom, body=body, name=x):
                self.sort_of_truncated(ctx, dom, lat.top, path + ("domain",))
                cod = self.infer(ctx.extend(x, lat.join(g, level), dom), body, level, path + ("body",))
                pi = Pi(g, dom, cod, x)
                self.formation(ctx, pi, path)
                return pi
            case GApp(fn=f, arg=arg, grade=g):
                pi = self._expect(rule, Pi, self.infer(ctx, f, level, path + ("fn",)), "a Pi-type", ctx, path + ("fn",))
                if pi.grade != g:
                    raise self.fail(rule, "GradeMismatch", f"argument at {g}, function expects {pi.grade}", path, pi.grade, g)
                self.against_truncated(ctx, arg, pi.domain, lat.join(g, level), path + ("arg",))
                return subst(pi.body, arg)
            case GPair(first=a1, grade=g, second=a2):
                dom = self.infer_truncated(ctx, a1, lat.join(g, level), path + ("first",))
                snd = self.infer(ctx, a2, level, path + ("second",))
                sigma = Sigma(g, dom, shift(snd, 1), "x")
                self.formation(ctx, sigma, path)
                return sigma
            case LetPair():
                return self._infer_let_pair(ctx, a, level, path)
            case Inj1() | Inj2():
                raise self.fail(rule, "CannotInfer", "an injection needs an expected sum type; ascribe it", path)
            case Case(scrutinee=s, left=b1, right=b2):
                sum_ty = self._expect(rule, Sum, self.infer(ctx, s, level, path + ("scrutinee",)), "a sum type", ctx, path + ("scrutinee",))
                results = []
                for branch, side, field in ((b1, sum_ty.left, "left"), (b2, sum_ty.right, "right")):
                    where = path + (field,)
                    pi = self._expect(rule, Pi, self.infer(ctx, branch, level, where), "a function branch", ctx, where)
                    if pi.grade != lat.bot:
                        raise self.fail(rule, "GradeMismatch", f"branches take their argument at {lat.bot}", where, lat.bot, pi.grade)
                    if mentions(pi.body, 0):
                        raise self.fail(rule, "TypeMismatch", "a case branch cannot have a dependent type", where)
                    self.convert(ctx, pi.domain, side, where, rule)
                    results.append(lower(pi.body, 1))
                self.convert(ctx, results[1], results[0], path + ("right",), rule)
                return results[0]
            case Ann(term=t, type=ty):
                self.sort_of_truncated(ctx, ty, lat.top, path + ("type",))
                self.against(ctx, t, ty, level, path + ("term",))
                return ty
        raise self.not_in_fragment("T-Form", a, path)

    # Let-pair and projections

    def _pair_scrutinee(self, ctx: Context, a: LetPair, level: Grade, path: Path) -> Sigma:
        found = self.infer(ctx, a.scrutinee, level, path + ("scrutinee",))
        sigma = self._expect("T-LetPairC", Sigma, found, "a Sigma-type", ctx, path + ("scrutinee",))
        if sigma.grade != a.grade:
            raise self.fail(
                "T-LetPairC", "GradeMismatch", f"pattern at {a.grade}, pair built at {sigma.grade}", path, sigma.grade, a.grade
            )
        return sigma

    def _pair_context(self, ctx: Context, a: LetPair, sigma: Sigma, level: Grade) -> Context:
        x, y, _ = a.names
        return ctx.extend(x, self.lattice.join(a.grade, level), sigma.domain).extend(y, level, sigma.body)

    def _infer_let_pair(self, ctx: Context, a: LetPair, level: Grade, path: Path) -> Term:
        sigma = self._pair_scrutinee(ctx, a, level, path)
        inner = self._pair_context(ctx, a, sigma, level)
        x, y, z = a.names
        if a.motive is not None:
            with self.tracer.rule("CT-Top", self._describe_truncation(ctx)):
                self.sort_of(self._truncation(ctx).extend(z, self.c, sigma), a.motive, self.c, path + ("motive",))
            refined = subst(shift(a.motive, 2, 1), GPair(Var(1, x), a.grade, Var(0, y)))
            self.against(inner, a.body, refined, level, path + ("body",))
            return subst(a.motive, a.scrutinee)
        body_ty = self.infer(inner, a.body, level, path + ("body",))
        if not mentions(body_ty, 0, 1):
            return lower(body_ty, 2)
        if a.body == Var(0):
            with self.tracer.rule("T-ProjTwoC", self.describe(ctx, a, level)):
                first = LetPair(a.grade, a.scrutinee, Var(1, x), None, a.names)
                self.infer_truncated(ctx, first, self.lattice.top, path)
                return subst(sigma.body, first)
        raise self.fail(
            "T-LetPairC",
            "MotiveRequired",
            "the body's type mentions the pattern variables; add 'return z. C'",
            path,
        )

    # Checking

    def against(self, ctx: Context, a: Term, ty: Term, level: Grade, path: Path) -> None:
        self._bounded(a, level, path)
        lat = self.lattice
        match a:
            case Inj1(body=body) | Inj2(body=body):
                first = isinstance(a, Inj1)
                rule = _RULES[type(a)]
                with self.tracer.rule(rule, self.describe(ctx, a, level)):
                    sum_ty = self._expect(rule, Sum, ty, "a sum type", ctx, path)
                    self.against(ctx, body, sum_ty.left if first else sum_ty.right, level, path + ("body",))
                return
            case GLam(grade=g, domain=dom, body=body, name=x):
                head = self.whnf(ty, ctx, path)
                if isinstance(head, Pi):
                    with self.tracer.rule("T-AbsC", self.describe(ctx, a, level)):
                        if head.grade != g:
                            raise self.fail("T-AbsC", "GradeMismatch", f"lambda at {g} against Pi at {head.grade}", path, head.grade, g)
                        self.sort_of_truncated(ctx, dom, lat.top, path + ("domain",))
                        self.convert(ctx, dom, head.domain, path + ("domain",), "T-AbsC")
                        self.against(ctx.extend(x, lat.join(g, level), dom), body, head.body, level, path + ("body",))
                    return
            case GPair(first=a1, grade=g, second=a2):
                head = self.whnf(ty, ctx, path)
                if isinstance(head, Sigma):
                    with self.tracer.rule("T-WPairC", self.describe(ctx, a, level)):
                        if head.grade != g:
                            raise self.fail("T-WPairC", "GradeMismatch", f"pair at {g} against Sigma at {head.grade}", path, head.grade, g)
                        self.against_truncated(ctx, a1, head.domain, lat.join(g, level), path + ("first",))
                        self.against(ctx, a2, subst(head.body, a1), level, path + ("second",))
                    return
            case Case(scrutinee=s, left=b1, right=b2):
                with self.tracer.rule("T-CaseC", self.describe(ctx, a, level)):
                    sum_ty = self._expect(
                        "T-CaseC", Sum, self.infer(ctx, s, level, path + ("scrutinee",)), "a sum type", ctx, path + ("scrutinee",)
                    )
                    result = shift(ty, 1)
                    self.against(ctx, b1, Pi(lat.bot, sum_ty.left, result, "_"), level, path + ("left",))
                    self.against(ctx, b2, Pi(lat.bot, sum_ty.right, result, "_"), level, path + ("right",))
                return
            case LetPair(motive=None):
                with self.tracer.rule("T-LetPairC", self.describe(ctx, a, level)):
                    sigma = self._pair_scrutinee(ctx, a, level, path)
                    inner = self._pair_context(ctx, a, sigma, level)
                    self.against(inner, a.body, shift(ty, 2), level, path + ("body",))
                return
        found = self.infer(ctx, a, level, path)
        self.convert(ctx, found, ty, path)


def ddc_check(
    config: DdcConfig,
    ctx: Context,
    a: Term,
    level: Grade,
    tracer: Optional[Tracer] = None,
) -> Term:
    """Synthesize ``A`` with ``ctx |- a :^level A`` in DDC."""
    return DdcChecker(config, tracer).check(ctx, a, level)
