"""Definitional equality by joinability, and consistency of head forms."""

import logging
import threading
from collections import deque
from typing import Optional

from gradia.calculi.grading import indist
from gradia.config import settings
from gradia.equality.parallel import par_step
from gradia.equality.schemas import JoinResult, Verdict
from gradia.exceptions import Cancelled
from gradia.lattice import Grade, Lattice
from gradia.syntax.context import GradeContext
from gradia.syntax.terms import Sort, Term, is_head_form


def def_eq(
    lattice: Lattice,
    phi: GradeContext,
    a: Term,
    b: Term,
    level: Grade,
    fuel: Optional[int] = None,
    window: Optional[int] = None,
    keep_chains: Optional[bool] = None,
    cancel: Optional[threading.Event] = None,
) -> JoinResult:
    """Decide ``phi |- a == b`` at ``level`` by joining parallel-reduction chains.

    Each round develops both sides once and compares every new reduct with
    the latest ``window`` reducts of the other side.

    Args:
        lattice: Grade lattice
        phi: Grades of the variables in scope
        a: Left term
        b: Right term
        level: Observer level of the equation
        fuel: Maximum number of rounds
        window: Reducts per side kept for comparison
        keep_chains: Retain and return both full chains
        cancel: Event checked once per round

    Returns:
        The verdict with witnesses on Equal

    Raises:
        Cancelled: If ``cancel`` was set during the search
    """
    fuel = settings.default_fuel if fuel is None else fuel
    window = settings.join_window if window is None else window
    keep_chains = settings.keep_full_chains if keep_chains is None else keep_chains

    left: deque[Term] = deque([a], maxlen=None if keep_chains else window)
    right: deque[Term] = deque([b], maxlen=None if keep_chains else window)

    def result(verdict: Verdict, steps: int, witnesses=None) -> JoinResult:
        return JoinResult(
            verdict=verdict,
            witnesses=witnesses,
            reducts=(left[-1], right[-1]),
            steps_used=steps,
            chains=(tuple(left), tuple(right)) if keep_chains else None,
        )

    if indist(lattice, phi, a, b, level):
        return result(Verdict.EQUAL, 0, (a, b))

    for rounds in range(1, fuel + 1):
        if cancel is not None and cancel.is_set():
            raise Cancelled(f"joinability cancelled after {rounds - 1} rounds", "Cancelled")
        next_a = par_step(lattice, left[-1], level)
        next_b = par_step(lattice, right[-1], level)
        moved_a, moved_b = next_a != left[-1], next_b != right[-1]
        if not moved_a and not moved_b:
            logging.debug(f"joinability reached fixpoints after {rounds - 1} rounds")
            return result(Verdict.NOT_EQUAL, rounds - 1)
        if moved_a:
            left.append(next_a)
            for other in list(right)[-window:]:
                if indist(lattice, phi, next_a, other, level):
                    return result(Verdict.EQUAL, rounds, (next_a, other))
        if moved_b:
            right.append(next_b)
            for other in list(left)[-window:]:
                if indist(lattice, phi, other, next_b, level):
                    return result(Verdict.EQUAL, rounds, (other, next_b))

    logging.info(f"joinability ran out of fuel after {fuel} rounds")
    return result(Verdict.FUEL_EXHAUSTED, fuel)


def consistent(a: Term, b: Term) -> bool:
    """False only for two head forms with different heads."""
    if not (is_head_form(a) and is_head_form(b)):
        return True
    if type(a) is not type(b):
        return False
    if isinstance(a, Sort):
        return a.name == b.name
    return True
