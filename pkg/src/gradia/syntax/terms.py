"""One AST for SDC, the sealing calculus and DDC.

Variables are de Bruijn indices; binder names are printing hints and take no
part in equality, so structural equality is alpha-equivalence.

Each node class lists its subterm fields in ``_children`` together with the
number of variables that field binds. Shifting, substitution, sizing and
path-based rewriting are written once against that table.
"""

from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable, ClassVar, Iterator, Optional

from gradia.lattice import Grade


class Term:
    """Base class of every syntax node."""

    __slots__ = ()
    _children: ClassVar[tuple[tuple[str, int], ...]] = ()


# Shared forms


@dataclass(frozen=True, slots=True)
class Var(Term):
    index: int
    name: str = field(default="x", compare=False)


@dataclass(frozen=True, slots=True)
class Sort(Term):
    name: str


@dataclass(frozen=True, slots=True)
class UnitTy(Term):
    pass


@dataclass(frozen=True, slots=True)
class UnitTm(Term):
    pass


@dataclass(frozen=True, slots=True)
class Sum(Term):
    left: Term
    right: Term
    _children = (("left", 0), ("right", 0))


@dataclass(frozen=True, slots=True)
class Inj1(Term):
    body: Term
    _children = (("body", 0),)


@dataclass(frozen=True, slots=True)
class Inj2(Term):
    body: Term
    _children = (("body", 0),)


@dataclass(frozen=True, slots=True)
class Case(Term):
    """Branches are functions: ``case inj1 a of b1 ; b2`` steps to ``b1 a``."""

    scrutinee: Term
    left: Term
    right: Term
    _children = (("scrutinee", 0), ("left", 0), ("right", 0))


@dataclass(frozen=True, slots=True)
class Ann(Term):
    term: Term
    type: Term
    _children = (("term", 0), ("type", 0))


# Simply typed forms


@dataclass(frozen=True, slots=True)
class Arrow(Term):
    dom: Term
    cod: Term
    _children = (("dom", 0), ("cod", 0))


@dataclass(frozen=True, slots=True)
class Prod(Term):
    left: Term
    right: Term
    _children = (("left", 0), ("right", 0))


@dataclass(frozen=True, slots=True)
class TMonad(Term):
    grade: Grade
    body: Term
    _children = (("body", 0),)


@dataclass(frozen=True, slots=True)
class Lam(Term):
    domain: Term
    body: Term
    name: str = field(default="x", compare=False)
    _children = (("domain", 0), ("body", 1))


@dataclass(frozen=True, slots=True)
class App(Term):
    fn: Term
    arg: Term
    _children = (("fn", 0), ("arg", 0))


@dataclass(frozen=True, slots=True)
class Pair(Term):
    first: Term
    second: Term
    _children = (("first", 0), ("second", 0))


@dataclass(frozen=True, slots=True)
class Proj1(Term):
    pair: Term
    _children = (("pair", 0),)


@dataclass(frozen=True, slots=True)
class Proj2(Term):
    pair: Term
    _children = (("pair", 0),)


@dataclass(frozen=True, slots=True)
class Return(Term):
    grade: Grade
    body: Term
    _children = (("body", 0),)


@dataclass(frozen=True, slots=True)
class Bind(Term):
    grade: Grade
    scrutinee: Term
    body: Term
    name: str = field(default="x", compare=False)
    _children = (("scrutinee", 0), ("body", 1))


@dataclass(frozen=True, slots=True)
class Seal(Term):
    grade: Grade
    body: Term
    _children = (("body", 0),)


@dataclass(frozen=True, slots=True)
class Unseal(Term):
    grade: Grade
    body: Term
    _children = (("body", 0),)


# Dependent forms


@dataclass(frozen=True, slots=True)
class Pi(Term):
    grade: Grade
    domain: Term
    body: Term
    name: str = field(default="x", compare=False)
    _children = (("domain", 0), ("body", 1))


@dataclass(frozen=True, slots=True)
class GLam(Term):
    grade: Grade
    domain: Term
    body: Term
    name: str = field(default="x", compare=False)
    _children = (("domain", 0), ("body", 1))


@dataclass(frozen=True, slots=True)
class GApp(Term):
    fn: Term
    arg: Term
    grade: Grade
    _children = (("fn", 0), ("arg", 0))


@dataclass(frozen=True, slots=True)
class Sigma(Term):
    grade: Grade
    domain: Term
    body: Term
    name: str = field(default="x", compare=False)
    _children = (("domain", 0), ("body", 1))


@dataclass(frozen=True, slots=True)
class GPair(Term):
    first: Term
    grade: Grade
    second: Term
    _children = (("first", 0), ("second", 0))


@dataclass(frozen=True, slots=True)
class LetPair(Term):
    """``let (x^g, y) = scrutinee [return z. motive] in body``.

    The body binds x (index 1) and y (index 0); the motive binds z.
    """

    grade: Grade
    scrutinee: Term
    body: Term
    motive: Optional[Term] = None
    names: tuple[str, str, str] = field(default=("x", "y", "z"), compare=False)
    _children = (("scrutinee", 0), ("body", 2), ("motive", 1))


SIMPLE_TYPES = (UnitTy, Arrow, Prod, Sum, TMonad)
HEAD_FORMS = (Sort, UnitTy, Pi, Sigma, Sum)


# Generic traversal


def children(t: Term) -> Iterator[tuple[str, int, Term]]:
    """Yield ``(field, binders, subterm)`` for each present subterm."""
    for name, binders in t._children:
        sub = getattr(t, name)
        if sub is not None:
            yield name, binders, sub


def map_children(t: Term, fn: Callable[[Term, int], Term]) -> Term:
    """Rebuild ``t`` with ``fn(child, binders)`` applied to each subterm."""
    if not t._children:
        return t
    changes = {}
    for name, binders, sub in children(t):
        new = fn(sub, binders)
        if new is not sub:
            changes[name] = new
    return replace(t, **changes) if changes else t


def shift(t: Term, d: int, cutoff: int = 0) -> Term:
    """Add ``d`` to every variable index at or above ``cutoff``."""
    if d == 0:
        return t
    return _shift(t, d, cutoff)


def _shift(t: Term, d: int, cutoff: int) -> Term:
    if isinstance(t, Var):
        return Var(t.index + d, t.name) if t.index >= cutoff else t
    return map_children(t, lambda sub, k: _shift(sub, d, cutoff + k))


def subst(body: Term, arg: Term) -> Term:
    """Replace index 0 of ``body`` with ``arg``, lowering the other indices."""
    return _subst(body, 0, arg)


def _subst(t: Term, depth: int, arg: Term) -> Term:
    if isinstance(t, Var):
        if t.index == depth:
            return shift(arg, depth)
        if t.index > depth:
            return Var(t.index - 1, t.name)
        return t
    return map_children(t, lambda sub, k: _subst(sub, depth + k, arg))


def subst2(body: Term, first: Term, second: Term) -> Term:
    """Instantiate a two-binder body: index 1 gets ``first``, index 0 ``second``."""
    return subst(subst(body, shift(second, 1)), first)


def lower(t: Term, n: int) -> Term:
    """Drop ``n`` unused innermost binders from the scope of ``t``."""
    return shift(t, -n, n)


@lru_cache(maxsize=65536)
def free_vars(t: Term) -> frozenset[int]:
    if isinstance(t, Var):
        return frozenset((t.index,))
    acc: set[int] = set()
    for _, binders, sub in children(t):
        acc.update(i - binders for i in free_vars(sub) if i >= binders)
    return frozenset(acc)


def mentions(t: Term, *indices: int) -> bool:
    fv = free_vars(t)
    return any(i in fv for i in indices)


@lru_cache(maxsize=65536)
def size(t: Term) -> int:
    """Number of AST nodes; grades and names do not count."""
    return 1 + sum(size(sub) for _, _, sub in children(t))


Path = tuple[str, ...]


def positions(t: Term, path: Path = (), depth: int = 0) -> Iterator[tuple[Path, Term, int]]:
    """Pre-order walk yielding ``(path, subterm, binders above it)``."""
    yield path, t, depth
    for name, binders, sub in children(t):
        yield from positions(sub, path + (name,), depth + binders)


def get_at(t: Term, path: Path) -> Term:
    for name in path:
        t = getattr(t, name)
    return t


def replace_at(t: Term, path: Path, new: Term) -> Term:
    if not path:
        return new
    head, rest = path[0], path[1:]
    return replace(t, **{head: replace_at(getattr(t, head), rest, new)})


def strip_ann(t: Term) -> Term:
    """Look through ascriptions."""
    while isinstance(t, Ann):
        t = t.term
    return t


def is_head_form(t: Term) -> bool:
    return isinstance(t, HEAD_FORMS)
