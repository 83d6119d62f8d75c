"""Indistinguishability and grading for SDC terms.

``eta^g`` (and ``seal^g``) bodies are the only guarded positions of the
simple calculus: an observer below ``g`` cannot tell two boxed terms apart as
long as both are well graded at the raised level.
"""

from gradia.calculi.grading import grade, indist
from gradia.lattice import Grade, Lattice
from gradia.syntax.context import GradeContext
from gradia.syntax.terms import Term


def sdc_indist(lattice: Lattice, phi: GradeContext, a: Term, b: Term, level: Grade) -> bool:
    return indist(lattice, phi, a, b, level)


def sdc_grade(lattice: Lattice, phi: GradeContext, a: Term, level: Grade) -> bool:
    return grade(lattice, phi, a, level)
