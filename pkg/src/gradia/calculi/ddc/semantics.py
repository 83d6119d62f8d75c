"""Call-by-name semantics of DDC."""

from dataclasses import replace
from typing import Optional

from gradia.calculi.base import run_cbn
from gradia.lattice import Lattice
from gradia.syntax.terms import (
    Ann,
    Case,
    GApp,
    GLam,
    GPair,
    Inj1,
    Inj2,
    LetPair,
    Pi,
    Sigma,
    Sort,
    Sum,
    Term,
    UnitTm,
    UnitTy,
    strip_ann,
    subst,
    subst2,
)

# Types are values too
VALUE_FORMS = (Sort, Pi, Sigma, Sum, UnitTy, UnitTm, GLam, GPair, Inj1, Inj2)

_HEAD_FIELD = {GApp: "fn", LetPair: "scrutinee", Case: "scrutinee", Ann: "term"}


def is_value(a: Term) -> bool:
    if isinstance(a, Ann):
        return is_value(a.term)
    return isinstance(a, VALUE_FORMS)


class DdcStepper:
    """CBN stepping; case branches are applied at the lattice's bottom grade."""

    def __init__(self, lattice: Lattice):
        self.lattice = lattice

    def contract(self, a: Term) -> Optional[Term]:
        match a:
            case GApp(fn=f, arg=arg, grade=g):
                head = strip_ann(f)
                if isinstance(head, GLam) and head.grade == g:
                    return subst(head.body, arg)
            case LetPair(grade=g, scrutinee=s, body=body):
                head = strip_ann(s)
                if isinstance(head, GPair) and head.grade == g:
                    return subst2(body, head.first, head.second)
            case Case(scrutinee=s, left=b1, right=b2):
                head = strip_ann(s)
                if isinstance(head, Inj1):
                    return GApp(b1, head.body, self.lattice.bot)
                if isinstance(head, Inj2):
                    return GApp(b2, head.body, self.lattice.bot)
        return None

    def step(self, a: Term) -> Optional[Term]:
        if is_value(a):
            return None
        reduct = self.contract(a)
        if reduct is not None:
            return reduct
        head_field = _HEAD_FIELD.get(type(a))
        if head_field is None:
            return None
        inner = self.step(getattr(a, head_field))
        if inner is None:
            return None
        return replace(a, **{head_field: inner})

    __call__ = step


def ddc_step(lattice: Lattice, a: Term) -> Optional[Term]:
    """One deterministic call-by-name step, or None for values and stuck terms."""
    return DdcStepper(lattice).step(a)


def evaluate(lattice: Lattice, a: Term, fuel: int) -> tuple[Term, int]:
    return run_cbn(DdcStepper(lattice), a, fuel)


def whnf(lattice: Lattice, a: Term, fuel: int) -> Term:
    """Weak-head normal form with ascriptions stripped from the head."""
    head, _ = run_cbn(DdcStepper(lattice), a, fuel)
    return strip_ann(head)
