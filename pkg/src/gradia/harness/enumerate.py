"""Exhaustive enumeration of the syntax of a fragment, by AST size.

De Bruijn indices make every enumerated term alpha-canonical. Enumeration
covers types as well as terms; it does not filter by typing.
"""

import itertools
from typing import Callable, Iterator, Sequence

from gradia.lattice import Grade, Lattice
from gradia.syntax.terms import (
    Ann,
    App,
    Arrow,
    Bind,
    Case,
    GApp,
    GLam,
    GPair,
    Inj1,
    Inj2,
    Lam,
    LetPair,
    Pair,
    Pi,
    Prod,
    Proj1,
    Proj2,
    Return,
    Seal,
    Sigma,
    Sort,
    Sum,
    Term,
    TMonad,
    UnitTm,
    UnitTy,
    Unseal,
    Var,
)

# Each shape: (builder, binders per child, uses a grade)
Shape = tuple[Callable[..., Term], tuple[int, ...], bool]

_SIMPLE_SHAPES: list[Shape] = [
    (lambda _g, a: Inj1(a), (0,), False),
    (lambda _g, a: Inj2(a), (0,), False),
    (lambda _g, a: Proj1(a), (0,), False),
    (lambda _g, a: Proj2(a), (0,), False),
    (lambda g, a: TMonad(g, a), (0,), True),
    (lambda _g, a, b: Arrow(a, b), (0, 0), False),
    (lambda _g, a, b: Prod(a, b), (0, 0), False),
    (lambda _g, a, b: Sum(a, b), (0, 0), False),
    (lambda _g, a, b: Lam(a, b), (0, 1), False),
    (lambda _g, a, b: App(a, b), (0, 0), False),
    (lambda _g, a, b: Pair(a, b), (0, 0), False),
    (lambda _g, a, b: Ann(a, b), (0, 0), False),
    (lambda _g, a, b, c: Case(a, b, c), (0, 0, 0), False),
]

_SDC_SHAPES: list[Shape] = [
    (lambda g, a: Return(g, a), (0,), True),
    (lambda g, a, b: Bind(g, a, b), (0, 1), True),
]

_SEAL_SHAPES: list[Shape] = [
    (lambda g, a: Seal(g, a), (0,), True),
    (lambda g, a: Unseal(g, a), (0,), True),
]

_PI_SHAPES: list[Shape] = [
    (lambda g, a, b: Pi(g, a, b), (0, 1), True),
    (lambda g, a, b: GLam(g, a, b), (0, 1), True),
    (lambda g, a, b: GApp(a, b, g), (0, 0), True),
]

_DDC_SHAPES: list[Shape] = _PI_SHAPES + [
    (lambda _g, a: Inj1(a), (0,), False),
    (lambda _g, a: Inj2(a), (0,), False),
    (lambda _g, a, b: Sum(a, b), (0, 0), False),
    (lambda _g, a, b: Ann(a, b), (0, 0), False),
    (lambda g, a, b: Sigma(g, a, b), (0, 1), True),
    (lambda g, a, b: GPair(a, g, b), (0, 0), True),
    (lambda g, a, b: LetPair(g, a, b), (0, 2), True),
    (lambda _g, a, b, c: Case(a, b, c), (0, 0, 0), False),
    (lambda g, a, b, c: LetPair(g, a, b, c), (0, 2, 1), True),
]


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered ways to write ``total`` as ``parts`` positive sizes."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class Enumerator:
    """Memoised enumeration of one fragment over one lattice."""

    def __init__(self, fragment: str, lattice: Lattice, sorts: Sequence[str] = ("Type",)):
        self.fragment = fragment
        self.lattice = lattice
        self.sorts = tuple(sorts)
        if fragment == "sdc":
            self.shapes = _SIMPLE_SHAPES + _SDC_SHAPES
        elif fragment == "seal":
            self.shapes = _SIMPLE_SHAPES + _SEAL_SHAPES
        elif fragment == "ddc":
            self.shapes = _DDC_SHAPES
        elif fragment == "ddc-pi":
            self.shapes = _PI_SHAPES
        else:
            raise ValueError(f"unknown fragment {fragment!r}")
        self._memo: dict[tuple[int, int], tuple[Term, ...]] = {}

    def leaves(self, depth: int) -> list[Term]:
        out: list[Term] = [Var(i) for i in range(depth)]
        if self.fragment in ("sdc", "seal", "ddc"):
            out += [UnitTm(), UnitTy()]
        if self.fragment in ("ddc", "ddc-pi"):
            out += [Sort(s) for s in self.sorts]
        return out

    def exact(self, size: int, depth: int) -> tuple[Term, ...]:
        """Every term of exactly ``size`` nodes with ``depth`` variables in scope."""
        key = (size, depth)
        if key in self._memo:
            return self._memo[key]
        if size == 1:
            found = tuple(self.leaves(depth))
        else:
            out: list[Term] = []
            for build, binders, graded in self.shapes:
                if len(binders) > size - 1:
                    continue
                grades: Sequence[Grade] = list(self.lattice) if graded else [self.lattice.bot]
                for sizes in _compositions(size - 1, len(binders)):
                    pools = [self.exact(n, depth + k) for n, k in zip(sizes, binders)]
                    for combo in itertools.product(*pools):
                        for g in grades:
                            out.append(build(g, *combo))
            found = tuple(out)
        self._memo[key] = found
        return found

    def up_to(self, size_bound: int, depth: int = 0) -> Iterator[Term]:
        for n in range(1, size_bound + 1):
            yield from self.exact(n, depth)


def enumerate_terms(
    fragment: str,
    size_bound: int,
    lattice: Lattice,
    free_var_grades: Sequence[Grade] = (),
    sorts: Sequence[str] = ("Type",),
) -> Iterator[Term]:
    """All terms and types of ``fragment`` up to ``size_bound`` nodes.

    ``free_var_grades`` only fixes how many variables are in scope; the
    grades matter to whoever checks the terms.
    """
    return Enumerator(fragment, lattice, sorts).up_to(size_bound, len(free_var_grades))
