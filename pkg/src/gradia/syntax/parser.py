"""Surface parser.

The lark transformer turns each parse-tree node into a *builder*: a function
from the names in scope (innermost last) to a :class:`Term`. Running the
root builder with the assumption names resolves every binder to a de Bruijn
index in a single top-down pass.
"""

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Literal, Optional

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from gradia.exceptions import LatticeError, ParseError
from gradia.lattice import Grade, Lattice
from gradia.syntax.context import Context
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
    shift,
)

Fragment = Literal["sdc", "seal", "ddc"]
Scope = tuple[str, ...]
Builder = Callable[[Scope], Term]

DEFAULT_SORTS = ("Type", "Kind", "Box")
EXTENSION_FRAGMENTS: dict[str, Fragment] = {".sdc": "sdc", ".seal": "seal", ".ddc": "ddc"}


@dataclass(frozen=True)
class Program:
    """A parsed source file: assumptions plus the term they scope."""

    context: Context
    term: Term


@lru_cache(maxsize=1)
def _parser() -> Lark:
    return Lark.open(
        "grammar.lark",
        rel_to=__file__,
        parser="lalr",
        start="program",
        propagate_positions=False,
        maybe_placeholders=True,
    )


def _position(tok: Optional[Token]) -> tuple[int, int]:
    if tok is None:
        return 0, 0
    return getattr(tok, "line", 0) or 0, getattr(tok, "column", 0) or 0


class _TermBuilder(Transformer):
    """Parse tree to scope builders, for one lattice and fragment."""

    def __init__(self, lattice: Lattice, fragment: Fragment, sorts: Iterable[str]):
        super().__init__()
        self.lattice = lattice
        self.fragment = fragment
        self.sorts = frozenset(sorts)

    # Helpers

    def _grade(self, tok: Optional[Token]) -> Grade:
        if tok is None:
            return self.lattice.bot
        try:
            return self.lattice.grade(str(tok))
        except LatticeError as e:
            line, col = _position(tok)
            raise ParseError(f"unknown grade {str(tok)!r}", "UnknownGrade", line, col) from e

    @property
    def _dependent(self) -> bool:
        return self.fragment == "ddc"

    def _simple_only(self, tok: Optional[Token], what: str) -> None:
        if tok is not None:
            line, col = _position(tok)
            raise ParseError(
                f"{what} carries a grade, which the {self.fragment} fragment does not allow",
                "Syntax",
                line,
                col,
            )

    # Entry points

    def program(self, items):
        *assumptions, body = items

        def build(base: Scope = ()) -> Program:
            ctx = Context()
            for name, grade, ty in assumptions:
                ctx = ctx.extend(name, grade, ty(base + ctx.names()))
            return Program(ctx, body(base + ctx.names()))

        return build

    def assumption(self, items):
        name, grade_tok, ty = items
        return str(name), self._grade(grade_tok), ty

    def grade(self, items):
        return items[0]

    # Variables and constants

    def var(self, items):
        tok = items[0]
        name = str(tok)

        def build(scope: Scope) -> Term:
            for depth, bound in enumerate(reversed(scope)):
                if bound == name:
                    return Var(depth, name)
            if name in self.sorts:
                return Sort(name)
            line, col = _position(tok)
            raise ParseError(f"unbound variable {name!r}", "UnboundVariable", line, col)

        return build

    def unit_ty(self, _items):
        return lambda scope: UnitTy()

    def unit_tm(self, _items):
        return lambda scope: UnitTm()

    # Binders

    def lam(self, items):
        name, grade_tok, dom, body = items
        x = str(name)
        if self._dependent:
            g = self._grade(grade_tok)
            return lambda scope: GLam(g, dom(scope), body(scope + (x,)), x)
        self._simple_only(grade_tok, "lambda")
        return lambda scope: Lam(dom(scope), body(scope + (x,)), x)

    def pi(self, items):
        name, grade_tok, dom, body = items
        x, g = str(name), self._grade(grade_tok)
        return lambda scope: Pi(g, dom(scope), body(scope + (x,)), x)

    def sigma(self, items):
        name, grade_tok, dom, body = items
        x, g = str(name), self._grade(grade_tok)
        return lambda scope: Sigma(g, dom(scope), body(scope + (x,)), x)

    def motive(self, items):
        name, body = items
        return str(name), body

    def letpair(self, items):
        x_tok, grade_tok, y_tok, scrut, motive, body = items
        x, y, g = str(x_tok), str(y_tok), self._grade(grade_tok)
        z, motive_body = motive if motive is not None else ("z", None)

        def build(scope: Scope) -> Term:
            m = motive_body(scope + (z,)) if motive_body is not None else None
            return LetPair(g, scrut(scope), body(scope + (x, y)), m, (x, y, z))

        return build

    def bind(self, items):
        grade_tok, name, scrut, body = items
        x, g = str(name), self._grade(grade_tok)
        return lambda scope: Bind(g, scrut(scope), body(scope + (x,)), x)

    def case(self, items):
        scrut, left, right = items
        return lambda scope: Case(scrut(scope), left(scope), right(scope))

    # Type operators

    def fun_ty(self, items):
        dom, cod = items
        if self._dependent:
            bot = self.lattice.bot
            return lambda scope: Pi(bot, dom(scope), shift(cod(scope), 1), "_")
        return lambda scope: Arrow(dom(scope), cod(scope))

    def sum_ty(self, items):
        left, right = items
        return lambda scope: Sum(left(scope), right(scope))

    def prod_ty(self, items):
        left, right = items
        if self._dependent:
            bot = self.lattice.bot
            return lambda scope: Sigma(bot, left(scope), shift(right(scope), 1), "_")
        return lambda scope: Prod(left(scope), right(scope))

    def monad(self, items):
        grade_tok, body = items
        g = self._grade(grade_tok)
        return lambda scope: TMonad(g, body(scope))

    # Eliminations and introductions

    def apply(self, items):
        fn, arg, grade_tok = items
        if self._dependent:
            g = self._grade(grade_tok)
            return lambda scope: GApp(fn(scope), arg(scope), g)
        self._simple_only(grade_tok, "application")
        return lambda scope: App(fn(scope), arg(scope))

    def pair(self, items):
        first, grade_tok, second = items
        if self._dependent:
            g = self._grade(grade_tok)
            return lambda scope: GPair(first(scope), g, second(scope))
        self._simple_only(grade_tok, "pair")
        return lambda scope: Pair(first(scope), second(scope))

    def _projection(self, items, index: int, simple: type):
        grade_tok, body = items
        if self._dependent:
            g = self._grade(grade_tok)
            return lambda scope: LetPair(g, body(scope), Var(index, "xy"[1 - index]))
        self._simple_only(grade_tok, "projection")
        return lambda scope: simple(body(scope))

    def proj1(self, items):
        return self._projection(items, 1, Proj1)

    def proj2(self, items):
        return self._projection(items, 0, Proj2)

    def inj1(self, items):
        (body,) = items
        return lambda scope: Inj1(body(scope))

    def inj2(self, items):
        (body,) = items
        return lambda scope: Inj2(body(scope))

    def eta(self, items):
        grade_tok, body = items
        g = self._grade(grade_tok)
        return lambda scope: Return(g, body(scope))

    def seal(self, items):
        grade_tok, body = items
        g = self._grade(grade_tok)
        return lambda scope: Seal(g, body(scope))

    def unseal(self, items):
        grade_tok, body = items
        g = self._grade(grade_tok)
        return lambda scope: Unseal(g, body(scope))

    def ann(self, items):
        term, ty = items
        return lambda scope: Ann(term(scope), ty(scope))


def _build(
    source: str,
    lattice: Lattice,
    fragment: Fragment,
    sorts: Iterable[str],
    base: Scope,
) -> Program:
    try:
        tree = _parser().parse(source)
    except UnexpectedInput as e:
        if isinstance(e, UnexpectedEOF):
            detail = "unexpected end of input"
        elif isinstance(e, UnexpectedCharacters):
            pos = e.pos_in_stream
            detail = f"unexpected character {source[pos]!r}" if 0 <= pos < len(source) else "unexpected character"
        elif isinstance(e, UnexpectedToken):
            detail = f"unexpected token {str(e.token)!r}"
        else:
            detail = str(e)
        raise ParseError(detail, "Syntax", getattr(e, "line", 0) or 0, getattr(e, "column", 0) or 0) from e
    try:
        build = _TermBuilder(lattice, fragment, sorts).transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, ParseError):
            raise e.orig_exc from None
        raise
    return build(base)


def parse_program(
    source: str,
    lattice: Lattice,
    fragment: Fragment = "ddc",
    sorts: Iterable[str] = DEFAULT_SORTS,
) -> Program:
    """Parse a source file with optional ``assume x :^g A;`` lines.

    Args:
        source: Surface text
        lattice: Lattice the grade names resolve in
        fragment: Which calculus the unmarked forms belong to
        sorts: Sort names of the PTS signature

    Returns:
        The assumptions as a context and the well-scoped term

    Raises:
        ParseError: On syntax errors, unknown grades or unbound variables
    """
    return _build(source, lattice, fragment, sorts, ())


def parse(
    source: str,
    lattice: Lattice,
    fragment: Fragment = "ddc",
    sorts: Iterable[str] = DEFAULT_SORTS,
    names: Scope = (),
) -> Term:
    """Parse a single term, optionally open over ``names``."""
    return _build(source, lattice, fragment, sorts, tuple(names)).term


def fragment_for(path: Path, explicit: Optional[str] = None) -> Fragment:
    """Choose the fragment from a flag, falling back to the file extension."""
    if explicit:
        return explicit  # type: ignore[return-value]
    return EXTENSION_FRAGMENTS.get(Path(path).suffix, "ddc")
