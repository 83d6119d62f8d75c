"""Indexed indistinguishability and grading over the shared AST.

Two terms are indistinguishable at ``l`` when they have the same shape, the
same grades and sort names, every variable they use is visible at ``l``, and
every guarded position agrees conditionally: recursively when the guard is
visible, otherwise both sides need only be well graded at the raised level.
Grading is the diagonal.
"""

from dataclasses import fields
from functools import lru_cache

from gradia.calculi.positions import binder_grades, guard
from gradia.lattice import Grade, Lattice
from gradia.syntax.context import GradeContext
from gradia.syntax.terms import Term, Var


@lru_cache(maxsize=None)
def _label_fields(cls: type) -> tuple[str, ...]:
    children = {name for name, _ in cls._children}
    return tuple(f.name for f in fields(cls) if f.compare and f.name not in children)


def same_labels(a: Term, b: Term) -> bool:
    """Same constructor with equal grades and sort names."""
    if type(a) is not type(b):
        return False
    return all(getattr(a, n) == getattr(b, n) for n in _label_fields(type(a)))


def _extend(lattice: Lattice, phi: GradeContext, t: Term, field: str, level: Grade) -> GradeContext:
    for g in binder_grades(t, field, lattice, level):
        phi = phi.extend("_", g)
    return phi


def indist(lattice: Lattice, phi: GradeContext, a: Term, b: Term, level: Grade) -> bool:
    """``phi |- a ~_level b``."""
    if isinstance(a, Var):
        return (
            isinstance(b, Var)
            and a.index == b.index
            and phi.has(a.index)
            and lattice.leq(phi.grade_of(a.index), level)
        )
    if not same_labels(a, b):
        return False
    for name, _ in a._children:
        x, y = getattr(a, name), getattr(b, name)
        if x is None or y is None:
            if x is not y:
                return False
            continue
        g = guard(a, name, lattice)
        if g is None or lattice.leq(g, level):
            if not indist(lattice, _extend(lattice, phi, a, name, level), x, y, level):
                return False
            continue
        raised = lattice.join(level, g)
        inner = _extend(lattice, phi, a, name, raised)
        if not (grade(lattice, inner, x, raised) and grade(lattice, inner, y, raised)):
            return False
    return True


def grade(lattice: Lattice, phi: GradeContext, a: Term, level: Grade) -> bool:
    """``phi |- a : level``, the grading judgment."""
    return indist(lattice, phi, a, a, level)
