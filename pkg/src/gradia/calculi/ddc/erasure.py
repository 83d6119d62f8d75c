"""Grade-indexed erasure: what an ``l``-observer can see of a term."""

from dataclasses import replace

from gradia.calculi.positions import guard
from gradia.lattice import Grade, Lattice
from gradia.syntax.terms import Term, UnitTm


def erase(lattice: Lattice, a: Term, level: Grade) -> Term:
    """Replace every position guarded above ``level`` with ``unit``.

    Erasure walks the same guarded positions as indistinguishability, so
    indistinguishable terms erase to the same term. That covers graded
    arguments and first pair components, and also the compile-time-only
    positions guarded by top: lambda domains, let-pair motives and ascribed
    types. Below top those are erased too.
    """
    if not a._children:
        return a
    changes = {}
    for name, _ in a._children:
        sub = getattr(a, name)
        if sub is None:
            continue
        g = guard(a, name, lattice)
        if g is not None and not lattice.leq(g, level):
            # unit fills the hole left by the hidden subterm
            changes[name] = UnitTm()
        else:
            changes[name] = erase(lattice, sub, level)
    return replace(a, **changes)
