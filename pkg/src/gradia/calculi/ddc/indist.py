"""Indistinguishability and grading for DDC terms."""

from gradia.calculi.grading import grade, indist
from gradia.lattice import Grade, Lattice
from gradia.syntax.context import GradeContext
from gradia.syntax.terms import Term


def ddc_indist(lattice: Lattice, phi: GradeContext, a: Term, b: Term, level: Grade) -> bool:
    """``phi |- a ~ b`` at ``level``.

    Arguments, pair components and bodies guarded above ``level`` only need
    to be well graded at the raised level; domains, motives and ascribed
    types are guarded at ``top``.
    """
    return indist(lattice, phi, a, b, level)


def ddc_grade(lattice: Lattice, phi: GradeContext, a: Term, level: Grade) -> bool:
    return grade(lattice, phi, a, level)
