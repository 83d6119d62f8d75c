"""Which subterm positions an observer sees, and at what grade.

Indistinguishability, grading, erasure and parallel reduction all walk the
same positions. A position is either observed at the current level or
*guarded* by a grade ``g``: it is only visible to observers with ``g <= l``.
Positions under binders also fix the grade of each bound variable.
"""

from typing import Optional

from gradia.lattice import Grade, Lattice
from gradia.syntax.terms import (
    Ann,
    Bind,
    GApp,
    GLam,
    GPair,
    LetPair,
    Return,
    Seal,
    Term,
)


def guard(t: Term, field: str, lattice: Lattice) -> Optional[Grade]:
    """Grade guarding ``t.field``, or None when it is observed directly."""
    match t, field:
        case (Return(grade=g) | Seal(grade=g)), "body":
            return g
        case GApp(grade=g), "arg":
            return g
        case GPair(grade=g), "first":
            return g
        case GLam(), "domain":
            return lattice.top
        case LetPair(), "motive":
            return lattice.top
        case Ann(), "type":
            return lattice.top
    return None


def binder_grades(t: Term, field: str, lattice: Lattice, level: Grade) -> tuple[Grade, ...]:
    """Grades of the variables ``t.field`` binds, outermost first.

    ``level`` is the observer level at ``t``; simple lambdas and Pi/Sigma bind
    at it, graded lambdas and binds raise it by their own grade.
    """
    match t, field:
        case (GLam(grade=g) | Bind(grade=g)), "body":
            return (lattice.join(g, level),)
        case LetPair(grade=g), "body":
            return (lattice.join(g, level), level)
    return tuple(level for _ in range(dict(t._children)[field]))
