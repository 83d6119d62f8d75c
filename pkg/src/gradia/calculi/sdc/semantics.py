"""Call-by-name semantics of SDC and the sealing calculus, plus full reduction."""

from dataclasses import replace
from typing import Optional

from gradia.calculi.base import run_cbn
from gradia.syntax.terms import (
    Ann,
    App,
    Bind,
    Case,
    Inj1,
    Inj2,
    Lam,
    Pair,
    Proj1,
    Proj2,
    Return,
    Seal,
    Term,
    UnitTm,
    Unseal,
    children,
    strip_ann,
    subst,
)

VALUE_FORMS = (UnitTm, Lam, Pair, Inj1, Inj2, Return, Seal)


def is_value(a: Term) -> bool:
    """Constructors are lazy: a pair or injection is a value whatever it holds."""
    if isinstance(a, Ann):
        return is_value(a.term)
    return isinstance(a, VALUE_FORMS)


def contract(a: Term) -> Optional[Term]:
    """Contract ``a`` if it is itself a redex; eliminators look through ascriptions."""
    match a:
        case App(fn=f, arg=arg):
            head = strip_ann(f)
            if isinstance(head, Lam):
                return subst(head.body, arg)
        case Proj1(pair=p):
            head = strip_ann(p)
            if isinstance(head, Pair):
                return head.first
        case Proj2(pair=p):
            head = strip_ann(p)
            if isinstance(head, Pair):
                return head.second
        case Case(scrutinee=s, left=b1, right=b2):
            head = strip_ann(s)
            if isinstance(head, Inj1):
                return App(b1, head.body)
            if isinstance(head, Inj2):
                return App(b2, head.body)
        case Bind(grade=g, scrutinee=s, body=b):
            head = strip_ann(s)
            if isinstance(head, Return) and head.grade == g:
                return subst(b, head.body)
        case Unseal(grade=g, body=s):
            head = strip_ann(s)
            if isinstance(head, Seal) and head.grade == g:
                return head.body
    return None


_HEAD_FIELD = {App: "fn", Proj1: "pair", Proj2: "pair", Case: "scrutinee", Bind: "scrutinee", Unseal: "body", Ann: "term"}


def sdc_step(a: Term) -> Optional[Term]:
    """One deterministic call-by-name step, or None for values and stuck terms."""
    if is_value(a):
        return None
    reduct = contract(a)
    if reduct is not None:
        return reduct
    head_field = _HEAD_FIELD.get(type(a))
    if head_field is None:
        return None
    inner = sdc_step(getattr(a, head_field))
    if inner is None:
        return None
    return replace(a, **{head_field: inner})


def full_step(a: Term) -> list[Term]:
    """Every one-step contraction anywhere in ``a``, leftmost-outermost first."""
    out: list[Term] = []
    top = contract(a)
    if top is not None:
        out.append(top)
    for name, _, sub in children(a):
        for reduct in full_step(sub):
            out.append(replace(a, **{name: reduct}))
    seen: set[Term] = set()
    unique = []
    for t in out:
        if t not in seen:
            seen.add(t)
            unique.append(t)
    return unique


def evaluate(a: Term, fuel: int) -> tuple[Term, int]:
    """Run :func:`sdc_step` to a value or stuck term within ``fuel`` steps."""
    return run_cbn(sdc_step, a, fuel)
