"""Parallel reduction at an observer grade.

:func:`par_step` is the complete development: every redex visible at the
level fires at once, and positions guarded above the level are left alone.
:func:`parallel_reducts` enumerates the whole relation, one choice per redex
and per position.
"""

import itertools
from dataclasses import replace
from functools import lru_cache
from typing import Optional

from gradia.calculi.positions import guard
from gradia.lattice import Grade, Lattice
from gradia.syntax.terms import (
    Ann,
    Case,
    GApp,
    GLam,
    GPair,
    Inj1,
    Inj2,
    LetPair,
    Term,
    strip_ann,
    subst,
    subst2,
)


def _visible(lattice: Lattice, t: Term, field: str, level: Grade) -> bool:
    g = guard(t, field, lattice)
    return g is None or lattice.leq(g, level)


def par_step(lattice: Lattice, a: Term, level: Grade) -> Term:
    """The maximal parallel reduct of ``a`` at ``level``."""

    def child(t: Term, field: str, sub: Optional[Term]) -> Optional[Term]:
        if sub is None or not _visible(lattice, t, field, level):
            return sub
        return par_step(lattice, sub, level)

    match a:
        case Ann(term=t):
            return par_step(lattice, t, level)
        case GApp(fn=f, arg=arg, grade=g):
            head = strip_ann(f)
            if isinstance(head, GLam) and head.grade == g:
                return subst(par_step(lattice, head.body, level), child(a, "arg", arg))
        case LetPair(grade=g, scrutinee=s, body=body):
            head = strip_ann(s)
            if isinstance(head, GPair) and head.grade == g:
                return subst2(
                    par_step(lattice, body, level),
                    child(head, "first", head.first),
                    par_step(lattice, head.second, level),
                )
        case Case(scrutinee=s, left=b1, right=b2):
            head = strip_ann(s)
            if isinstance(head, (Inj1, Inj2)):
                branch = b1 if isinstance(head, Inj1) else b2
                return GApp(par_step(lattice, branch, level), par_step(lattice, head.body, level), lattice.bot)
    if not a._children:
        return a
    changes = {}
    for name, _ in a._children:
        sub = getattr(a, name)
        new = child(a, name, sub)
        if new is not sub:
            changes[name] = new
    return replace(a, **changes) if changes else a


def parallel_reducts(lattice: Lattice, a: Term, level: Grade) -> frozenset[Term]:
    """Every ``b`` with ``a => b`` at ``level``, including ``a`` itself."""
    return _reducts(lattice, a, level)


@lru_cache(maxsize=8192)
def _reducts(lattice: Lattice, a: Term, level: Grade) -> frozenset[Term]:
    def options(t: Term, field: str) -> frozenset:
        sub = getattr(t, field)
        if sub is None or not _visible(lattice, t, field, level):
            return frozenset((sub,))
        return _reducts(lattice, sub, level)

    out: set[Term] = set()
    names = [name for name, _ in a._children]
    if names:
        for combo in itertools.product(*(options(a, n) for n in names)):
            out.add(replace(a, **dict(zip(names, combo))))
    else:
        out.add(a)

    match a:
        case Ann(term=t):
            out |= _reducts(lattice, t, level)
        case GApp(fn=f, grade=g):
            head = strip_ann(f)
            if isinstance(head, GLam) and head.grade == g:
                for body in _reducts(lattice, head.body, level):
                    for arg in options(a, "arg"):
                        out.add(subst(body, arg))
        case LetPair(grade=g, scrutinee=s):
            head = strip_ann(s)
            if isinstance(head, GPair) and head.grade == g:
                for body in _reducts(lattice, a.body, level):
                    for first in options(head, "first"):
                        for second in _reducts(lattice, head.second, level):
                            out.add(subst2(body, first, second))
        case Case(scrutinee=s, left=b1, right=b2):
            head = strip_ann(s)
            if isinstance(head, (Inj1, Inj2)):
                branch = b1 if isinstance(head, Inj1) else b2
                for fn in _reducts(lattice, branch, level):
                    for v in _reducts(lattice, head.body, level):
                        out.add(GApp(fn, v, lattice.bot))
    return frozenset(out)


def par_star(lattice: Lattice, a: Term, level: Grade, rounds: int) -> Term:
    """Iterate :func:`par_step` at most ``rounds`` times or until a fixpoint."""
    for _ in range(rounds):
        nxt = par_step(lattice, a, level)
        if nxt == a:
            break
        a = nxt
    return a

