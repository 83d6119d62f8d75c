"""Pieces shared by the checkers and evaluators of every calculus."""

import logging
from typing import Any, Callable, Optional

from gradia.exceptions import FuelExhaustedError, TypeCheckError
from gradia.lattice import Grade, Lattice
from gradia.syntax.context import Context
from gradia.syntax.printer import print_term
from gradia.syntax.terms import Path, Term
from gradia.utils.trace import NULL_TRACER, Tracer

Stepper = Callable[[Term], Optional[Term]]


def location(path: Path) -> str:
    """Dotted field path of a subterm, ``<root>`` for the whole term."""
    return ".".join(path) if path else "<root>"


def run_cbn(step: Stepper, a: Term, fuel: int) -> tuple[Term, int]:
    """Step ``a`` until no rule applies.

    Returns:
        The final term and the number of steps taken

    Raises:
        FuelExhaustedError: If ``fuel`` steps did not reach a normal form
    """
    steps = 0
    while True:
        nxt = step(a)
        if nxt is None:
            return a, steps
        if steps >= fuel:
            raise FuelExhaustedError(f"no normal form within {fuel} steps", "FuelExhausted")
        a = nxt
        steps += 1


class BaseChecker:
    """Error construction, tracing and rendering for a rule-based checker."""

    fragment = "shared"

    def __init__(self, lattice: Lattice, tracer: Optional[Tracer] = None):
        self.lattice = lattice
        self.tracer = tracer or NULL_TRACER

    def fail(
        self,
        rule: str,
        code: str,
        detail: str,
        path: Path,
        expected: Any = None,
        found: Any = None,
    ) -> TypeCheckError:
        logging.debug(f"{rule} failed at {location(path)}: {detail}")
        return TypeCheckError(detail, code, rule, location(path), expected, found)

    def show(self, t: Term, ctx: Context) -> str:
        return print_term(t, ctx.names())

    def describe(self, ctx: Context, a: Term, level: Grade) -> Callable[[], str]:
        return lambda: f"|- {self.show(a, ctx)} :^{level}"

    def not_in_fragment(self, rule: str, a: Term, path: Path) -> TypeCheckError:
        return self.fail(
            rule,
            "NotInFragment",
            f"{type(a).__name__} is not part of the {self.fragment} fragment",
            path,
        )
