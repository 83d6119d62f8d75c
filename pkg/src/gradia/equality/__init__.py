"""Definitional equality at a grade."""

from gradia.equality.joinability import consistent, def_eq
from gradia.equality.parallel import par_star, par_step, parallel_reducts
from gradia.equality.schemas import JoinResult, Verdict

__all__ = [
    "JoinResult",
    "Verdict",
    "consistent",
    "def_eq",
    "par_star",
    "par_step",
    "parallel_reducts",
]
