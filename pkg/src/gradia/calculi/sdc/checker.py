"""Bidirectional type checking for SDC and the sealing calculus.

Synthesis covers every form whose type is determined by its parts; the
introduction forms that are not (injections, and anything built from them)
are checked against an expected type, which an ascription ``(a : A)``
supplies. Type equality is structural since simple types are closed.
"""

import logging
from typing import Optional

from gradia.calculi.base import BaseChecker
from gradia.lattice import Grade, Lattice
from gradia.syntax.context import Context
from gradia.syntax.terms import (
    Ann,
    App,
    Arrow,
    Bind,
    Case,
    Inj1,
    Inj2,
    Lam,
    Pair,
    Path,
    Prod,
    Proj1,
    Proj2,
    Return,
    Seal,
    SIMPLE_TYPES,
    Sum,
    Term,
    TMonad,
    UnitTm,
    UnitTy,
    Unseal,
    Var,
)
from gradia.utils.trace import Tracer


class SdcChecker(BaseChecker):
    """Checks ``ctx |- a :^l A`` for the simply typed dependency calculus."""

    fragment = "sdc"
    prefix = "SDC"

    def __init__(self, lattice: Lattice, tracer: Optional[Tracer] = None):
        super().__init__(lattice, tracer)

    # Public API

    def check(self, ctx: Context, a: Term, level: Grade) -> Term:
        """Synthesize the type of ``a`` at observer ``level``.

        Raises:
            TypeCheckError: Naming the first rule whose premise failed
        """
        ty = self.infer(ctx, a, level, ())
        logging.debug(f"{self.prefix} synthesized {self.show(ty, ctx)} at {level}")
        return ty

    def check_against(self, ctx: Context, a: Term, ty: Term, level: Grade) -> None:
        self.against(ctx, a, ty, level, ())

    # Types

    def well_formed(self, ty: Term, path: Path) -> None:
        if not isinstance(ty, SIMPLE_TYPES):
            raise self.fail(f"{self.prefix}-Type", "NotAType", f"{type(ty).__name__} is not a simple type", path)
        match ty:
            case Arrow(dom=a, cod=b) | Prod(left=a, right=b) | Sum(left=a, right=b):
                self.well_formed(a, path + ("dom" if isinstance(ty, Arrow) else "left",))
                self.well_formed(b, path + ("cod" if isinstance(ty, Arrow) else "right",))
            case TMonad(body=a):
                self.well_formed(a, path + ("body",))

    def _mismatch(self, rule: str, expected: Term, found: Term, ctx: Context, path: Path):
        return self.fail(
            rule,
            "TypeMismatch",
            f"expected {self.show(expected, ctx)}, found {self.show(found, ctx)}",
            path,
            expected,
            found,
        )

    def _shape(self, rule: str, shape: type, ty: Term, what: str, ctx: Context, path: Path) -> Term:
        if not isinstance(ty, shape):
            raise self.fail(rule, "TypeMismatch", f"expected {what}, found {self.show(ty, ctx)}", path, what, ty)
        return ty

    # Variables and the graded modality; the sealing calculus overrides these

    def infer_var(self, ctx: Context, a: Var, level: Grade, path: Path) -> Term:
        rule = f"{self.prefix}-Var"
        if not ctx.has(a.index):
            raise self.fail(rule, "UnboundVariable", f"index {a.index} is not bound", path)
        binding = ctx.lookup(a.index)
        if not self.lattice.leq(binding.grade, level):
            raise self.fail(
                rule,
                "VarGradeTooHigh",
                f"{binding.name} is graded {binding.grade}, not visible at {level}",
                path,
                level,
                binding.grade,
            )
        return binding.type

    def infer_modal(self, ctx: Context, a: Term, level: Grade, path: Path) -> Term:
        lat = self.lattice
        match a:
            case Return(grade=g, body=body):
                with self.tracer.rule("SDC-Return", self.describe(ctx, a, level)):
                    return TMonad(g, self.infer(ctx, body, lat.join(level, g), path + ("body",)))
            case Bind(grade=g, scrutinee=s, body=body, name=x):
                with self.tracer.rule("SDC-Bind", self.describe(ctx, a, level)):
                    inner = self._bind_scrutinee(ctx, a, level, path)
                    ty = self.infer(ctx.extend(x, lat.join(level, g), inner), body, level, path + ("body",))
                    return ty
        raise self.not_in_fragment(f"{self.prefix}-Form", a, path)

    def _bind_scrutinee(self, ctx: Context, a: Bind, level: Grade, path: Path) -> Term:
        s_ty = self.infer(ctx, a.scrutinee, level, path + ("scrutinee",))
        m = self._shape("SDC-Bind", TMonad, s_ty, "a graded modality T^g A", ctx, path + ("scrutinee",))
        if m.grade != a.grade:
            raise self.fail(
                "SDC-Bind",
                "GradeMismatch",
                f"bind^{a.grade} over T^{m.grade}",
                path,
                a.grade,
                m.grade,
            )
        return m.body

    # Synthesis

    def infer(self, ctx: Context, a: Term, level: Grade, path: Path) -> Term:
        p = self.prefix
        match a:
            case Var():
                with self.tracer.rule(f"{p}-Var", self.describe(ctx, a, level)):
                    return self.infer_var(ctx, a, level, path)
            case UnitTm():
                with self.tracer.rule(f"{p}-Unit"):
                    return UnitTy()
            case Lam(domain=dom, body=body, name=x):
                with self.tracer.rule(f"{p}-Abs", self.describe(ctx, a, level)):
                    self.well_formed(dom, path + ("domain",))
                    cod = self.infer(ctx.extend(x, level, dom), body, level, path + ("body",))
                    return Arrow(dom, cod)
            case App(fn=f, arg=arg):
                with self.tracer.rule(f"{p}-App", self.describe(ctx, a, level)):
                    fn_ty = self.infer(ctx, f, level, path + ("fn",))
                    arrow = self._shape(f"{p}-App", Arrow, fn_ty, "a function type", ctx, path + ("fn",))
                    self.against(ctx, arg, arrow.dom, level, path + ("arg",))
                    return arrow.cod
            case Pair(first=x1, second=x2):
                with self.tracer.rule(f"{p}-Pair", self.describe(ctx, a, level)):
                    return Prod(
                        self.infer(ctx, x1, level, path + ("first",)),
                        self.infer(ctx, x2, level, path + ("second",)),
                    )
            case Proj1(pair=pr) | Proj2(pair=pr):
                first = isinstance(a, Proj1)
                rule = f"{p}-ProjOne" if first else f"{p}-ProjTwo"
                with self.tracer.rule(rule, self.describe(ctx, a, level)):
                    prod = self._shape(rule, Prod, self.infer(ctx, pr, level, path + ("pair",)), "a product type", ctx, path + ("pair",))
                    return prod.left if first else prod.right
            case Inj1() | Inj2():
                rule = f"{p}-InjOne" if isinstance(a, Inj1) else f"{p}-InjTwo"
                raise self.fail(rule, "CannotInfer", "an injection needs an expected sum type; ascribe it", path)
            case Case(scrutinee=s, left=b1, right=b2):
                with self.tracer.rule(f"{p}-Case", self.describe(ctx, a, level)):
                    sum_ty = self._shape(f"{p}-Case", Sum, self.infer(ctx, s, level, path + ("scrutinee",)), "a sum type", ctx, path + ("scrutinee",))
                    left_ty = self._shape(f"{p}-Case", Arrow, self.infer(ctx, b1, level, path + ("left",)), "a function branch", ctx, path + ("left",))
                    if left_ty.dom != sum_ty.left:
                        raise self._mismatch(f"{p}-Case", sum_ty.left, left_ty.dom, ctx, path + ("left",))
                    self.against(ctx, b2, Arrow(sum_ty.right, left_ty.cod), level, path + ("right",))
                    return left_ty.cod
            case Ann(term=t, type=ty):
                with self.tracer.rule(f"{p}-Ann", self.describe(ctx, a, level)):
                    self.well_formed(ty, path + ("type",))
                    self.against(ctx, t, ty, level, path + ("term",))
                    return ty
        return self.infer_modal(ctx, a, level, path)

    # Checking

    def against(self, ctx: Context, a: Term, ty: Term, level: Grade, path: Path) -> None:
        p = self.prefix
        match a:
            case Inj1(body=body) | Inj2(body=body):
                first = isinstance(a, Inj1)
                rule = f"{p}-InjOne" if first else f"{p}-InjTwo"
                with self.tracer.rule(rule, self.describe(ctx, a, level)):
                    sum_ty = self._shape(rule, Sum, ty, "a sum type", ctx, path)
                    self.against(ctx, body, sum_ty.left if first else sum_ty.right, level, path + ("body",))
                return
            case Lam(domain=dom, body=body, name=x) if isinstance(ty, Arrow):
                with self.tracer.rule(f"{p}-Abs", self.describe(ctx, a, level)):
                    self.well_formed(dom, path + ("domain",))
                    if dom != ty.dom:
                        raise self._mismatch(f"{p}-Abs", ty.dom, dom, ctx, path + ("domain",))
                    self.against(ctx.extend(x, level, dom), body, ty.cod, level, path + ("body",))
                return
            case Pair(first=x1, second=x2) if isinstance(ty, Prod):
                with self.tracer.rule(f"{p}-Pair", self.describe(ctx, a, level)):
                    self.against(ctx, x1, ty.left, level, path + ("first",))
                    self.against(ctx, x2, ty.right, level, path + ("second",))
                return
            case Case(scrutinee=s, left=b1, right=b2):
                with self.tracer.rule(f"{p}-Case", self.describe(ctx, a, level)):
                    sum_ty = self._shape(f"{p}-Case", Sum, self.infer(ctx, s, level, path + ("scrutinee",)), "a sum type", ctx, path + ("scrutinee",))
                    self.against(ctx, b1, Arrow(sum_ty.left, ty), level, path + ("left",))
                    self.against(ctx, b2, Arrow(sum_ty.right, ty), level, path + ("right",))
                return
        if self.against_modal(ctx, a, ty, level, path):
            return
        found = self.infer(ctx, a, level, path)
        if found != ty:
            raise self._mismatch(f"{p}-Sub", ty, found, ctx, path)

    def against_modal(self, ctx: Context, a: Term, ty: Term, level: Grade, path: Path) -> bool:
        """Check the modal forms in checking mode; False when ``a`` is not one."""
        lat = self.lattice
        match a:
            case Return(grade=g, body=body) if isinstance(ty, TMonad):
                with self.tracer.rule("SDC-Return", self.describe(ctx, a, level)):
                    if ty.grade != g:
                        raise self.fail("SDC-Return", "GradeMismatch", f"eta^{g} against T^{ty.grade}", path, ty.grade, g)
                    self.against(ctx, body, ty.body, lat.join(level, g), path + ("body",))
                return True
            case Bind(grade=g, body=body, name=x):
                with self.tracer.rule("SDC-Bind", self.describe(ctx, a, level)):
                    inner = self._bind_scrutinee(ctx, a, level, path)
                    self.against(ctx.extend(x, lat.join(level, g), inner), body, ty, level, path + ("body",))
                return True
        return False


class SealChecker(SdcChecker):
    """The sealing calculus: ungraded contexts, ``seal``/``unseal`` for the modality."""

    fragment = "seal"
    prefix = "Sealing"

    def infer_var(self, ctx: Context, a: Var, level: Grade, path: Path) -> Term:
        if not ctx.has(a.index):
            raise self.fail("Sealing-Var", "UnboundVariable", f"index {a.index} is not bound", path)
        return ctx.lookup(a.index).type

    def infer_modal(self, ctx: Context, a: Term, level: Grade, path: Path) -> Term:
        match a:
            case Seal(grade=g, body=body):
                with self.tracer.rule("Sealing-Seal", self.describe(ctx, a, level)):
                    return TMonad(g, self.infer(ctx, body, self.lattice.join(level, g), path + ("body",)))
            case Unseal(grade=g, body=body):
                with self.tracer.rule("Sealing-Unseal", self.describe(ctx, a, level)):
                    return self._unseal(ctx, a, level, path)
        raise self.not_in_fragment("Sealing-Form", a, path)

    def _unseal(self, ctx: Context, a: Unseal, level: Grade, path: Path) -> Term:
        m = self._shape(
            "Sealing-Unseal",
            TMonad,
            self.infer(ctx, a.body, level, path + ("body",)),
            "a graded modality T^g A",
            ctx,
            path + ("body",),
        )
        if m.grade != a.grade:
            raise self.fail("Sealing-Unseal", "GradeMismatch", f"unseal^{a.grade} over T^{m.grade}", path, a.grade, m.grade)
        if not self.lattice.leq(a.grade, level):
            raise self.fail(
                "Sealing-Unseal",
                "UnsealClearance",
                f"unsealing {a.grade} needs clearance, observer is {level}",
                path,
                a.grade,
                level,
            )
        return m.body

    def against_modal(self, ctx: Context, a: Term, ty: Term, level: Grade, path: Path) -> bool:
        match a:
            case Seal(grade=g, body=body) if isinstance(ty, TMonad):
                with self.tracer.rule("Sealing-Seal", self.describe(ctx, a, level)):
                    if ty.grade != g:
                        raise self.fail("Sealing-Seal", "GradeMismatch", f"seal^{g} against T^{ty.grade}", path, ty.grade, g)
                    self.against(ctx, body, ty.body, self.lattice.join(level, g), path + ("body",))
                return True
        return False


def sdc_check(lattice: Lattice, ctx: Context, a: Term, level: Grade, tracer: Optional[Tracer] = None) -> Term:
    """Synthesize ``A`` with ``ctx |- a :^level A`` in SDC."""
    return SdcChecker(lattice, tracer).check(ctx, a, level)


def seal_check(lattice: Lattice, ctx: Context, a: Term, level: Grade, tracer: Optional[Tracer] = None) -> Term:
    """Synthesize ``A`` with ``ctx |- a :^level A`` in the sealing calculus."""
    return SealChecker(lattice, tracer).check(ctx, a, level)
