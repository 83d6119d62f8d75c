"""Pretty-printer for the surface grammar.

Output re-parses to a structurally equal term in the fragment the term came
from. Binder hints are kept where they do not clash with an enclosing name, a
keyword or a sort name; otherwise a numeric suffix is added.
"""

import re
from typing import Iterable

from gradia.lattice import Grade
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

KEYWORDS = frozenset(
    {
        "assume", "let", "return", "in", "bind", "case", "of", "inj1", "inj2",
        "eta", "seal", "unseal", "pi1", "pi2", "T", "Pi", "Sigma", "Unit", "unit",
    }
)
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")

# Precedence levels, loosest first
EXPR, ARROW, SUM, PROD, APP, UNARY, ATOM = range(7)


def _g(grade: Grade) -> str:
    return f"^{grade.display_name}"


class _Printer:
    def __init__(self, sorts: Iterable[str]):
        self.reserved = KEYWORDS | frozenset(sorts)

    def fresh(self, hint: str, scope: tuple[str, ...]) -> str:
        base = hint if _NAME.match(hint) and hint not in self.reserved else "x"
        if base not in scope and base not in self.reserved:
            return base
        stem = base.rstrip("0123456789'") or "x"
        i = 1
        while f"{stem}{i}" in scope or f"{stem}{i}" in self.reserved:
            i += 1
        return f"{stem}{i}"

    def show(self, t: Term, scope: tuple[str, ...], level: int = EXPR) -> str:
        text, prec = self._render(t, scope)
        return f"({text})" if prec < level else text

    def _binder(self, lead: str, hint: str, grade: str, dom: Term, body: Term, scope):
        x = self.fresh(hint, scope)
        return (
            f"{lead}{x}:{grade}{' ' if grade else ''}{self.show(dom, scope, ARROW)}. "
            f"{self.show(body, scope + (x,))}"
        )

    def _render(self, t: Term, scope: tuple[str, ...]) -> tuple[str, int]:
        show = self.show
        match t:
            case Var(index=i):
                if 0 <= i < len(scope):
                    return scope[len(scope) - 1 - i], ATOM
                return f"#{i}", ATOM
            case Sort(name=s):
                return s, ATOM
            case UnitTy():
                return "Unit", ATOM
            case UnitTm():
                return "unit", ATOM
            case Ann(term=a, type=ty):
                return f"({show(a, scope)} : {show(ty, scope)})", ATOM
            case Pair(first=a, second=b):
                return f"({show(a, scope)}, {show(b, scope)})", ATOM
            case GPair(first=a, grade=g, second=b):
                return f"({show(a, scope, UNARY)}{_g(g)}, {show(b, scope)})", ATOM
            case Inj1(body=a):
                return f"inj1 {show(a, scope, ATOM)}", UNARY
            case Inj2(body=a):
                return f"inj2 {show(a, scope, ATOM)}", UNARY
            case Proj1(pair=a):
                return f"pi1 {show(a, scope, ATOM)}", UNARY
            case Proj2(pair=a):
                return f"pi2 {show(a, scope, ATOM)}", UNARY
            case Return(grade=g, body=a):
                return f"eta{_g(g)} {show(a, scope, ATOM)}", UNARY
            case Seal(grade=g, body=a):
                return f"seal{_g(g)} {show(a, scope, ATOM)}", UNARY
            case Unseal(grade=g, body=a):
                return f"unseal{_g(g)} {show(a, scope, ATOM)}", UNARY
            case TMonad(grade=g, body=a):
                return f"T{_g(g)} {show(a, scope, ATOM)}", UNARY
            case App(fn=f, arg=a):
                return f"{show(f, scope, APP)} {show(a, scope, ATOM)}", APP
            case GApp(fn=f, arg=a, grade=g):
                return f"{show(f, scope, APP)} {show(a, scope, ATOM)}{_g(g)}", APP
            case Prod(left=a, right=b):
                return f"{show(a, scope, APP)} * {show(b, scope, PROD)}", PROD
            case Sum(left=a, right=b):
                return f"{show(a, scope, PROD)} + {show(b, scope, SUM)}", SUM
            case Arrow(dom=a, cod=b):
                return f"{show(a, scope, SUM)} -> {show(b, scope, ARROW)}", ARROW
            case Lam(domain=a, body=b, name=x):
                return self._binder("\\", x, "", a, b, scope), EXPR
            case GLam(grade=g, domain=a, body=b, name=x):
                return self._binder("\\", x, _g(g), a, b, scope), EXPR
            case Pi(grade=g, domain=a, body=b, name=x):
                return self._binder("Pi ", x, _g(g), a, b, scope), EXPR
            case Sigma(grade=g, domain=a, body=b, name=x):
                return self._binder("Sigma ", x, _g(g), a, b, scope), EXPR
            case Bind(grade=g, scrutinee=a, body=b, name=x):
                y = self.fresh(x, scope)
                return f"bind{_g(g)} {y} = {show(a, scope)} in {show(b, scope + (y,))}", EXPR
            case Case(scrutinee=a, left=b1, right=b2):
                return f"case {show(a, scope)} of {show(b1, scope, ARROW)} ; {show(b2, scope)}", EXPR
            case LetPair(grade=g, scrutinee=a, body=b, motive=m, names=(hx, hy, hz)):
                x = self.fresh(hx, scope)
                y = self.fresh(hy, scope + (x,))
                text = f"let ({x}{_g(g)}, {y}) = {show(a, scope)}"
                if m is not None:
                    z = self.fresh(hz, scope)
                    text += f" return {z}. {show(m, scope + (z,))}"
                return f"{text} in {show(b, scope + (x, y))}", EXPR
        raise TypeError(f"cannot print {type(t).__name__}")


def print_term(t: Term, names: Iterable[str] = (), sorts: Iterable[str] = ("Type", "Kind", "Box")) -> str:
    """Render ``t`` in surface syntax.

    Args:
        t: Term to render
        names: Names of the free variables in scope, innermost last
        sorts: Sort names that binders must not shadow
    """
    return _Printer(sorts).show(t, tuple(names))
