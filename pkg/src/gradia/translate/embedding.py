"""SDC into DDC-top.

Simple types become bot-graded Pi and Sigma types and the graded modality
``T^g A`` becomes ``Sigma x:^g A. Unit``; ``eta`` packs its body with a unit
and ``bind`` unpacks it, leaving the unit component unused.
"""

from gradia.exceptions import TranslationError
from gradia.lattice import Lattice
from gradia.syntax.context import Binding, Context
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
    Sigma,
    Sum,
    Term,
    TMonad,
    UnitTm,
    UnitTy,
    Var,
    shift,
)


def sdc_to_ddct(lattice: Lattice, a: Term) -> Term:
    """Translate an SDC term or simple type.

    Raises:
        TranslationError: If ``a`` is not in the SDC fragment
    """

    def go(t: Term) -> Term:
        match t:
            case Var() | UnitTm() | UnitTy():
                return t
            case Arrow(dom=d, cod=c):
                return Pi(lattice.bot, go(d), shift(go(c), 1), "_")
            case Prod(left=l, right=r):
                return Sigma(lattice.bot, go(l), shift(go(r), 1), "_")
            case Sum(left=l, right=r):
                return Sum(go(l), go(r))
            case TMonad(grade=g, body=body):
                return Sigma(g, go(body), UnitTy(), "x")
            case Lam(domain=d, body=body, name=x):
                return GLam(lattice.bot, go(d), go(body), x)
            case App(fn=f, arg=arg):
                return GApp(go(f), go(arg), lattice.bot)
            case Pair(first=a1, second=a2):
                return GPair(go(a1), lattice.bot, go(a2))
            case Proj1(pair=p):
                return LetPair(lattice.bot, go(p), Var(1, "x"), None, ("x", "y", "z"))
            case Proj2(pair=p):
                return LetPair(lattice.bot, go(p), Var(0, "y"), None, ("x", "y", "z"))
            case Inj1(body=body):
                return Inj1(go(body))
            case Inj2(body=body):
                return Inj2(go(body))
            case Case(scrutinee=s, left=b1, right=b2):
                return Case(go(s), go(b1), go(b2))
            case Return(grade=g, body=body):
                return GPair(go(body), g, UnitTm())
            case Bind(grade=g, scrutinee=s, body=body, name=x):
                # the unit component binds index 0
                return LetPair(g, go(s), shift(go(body), 1), None, (x, "_", "z"))
            case Ann(term=term, type=ty):
                return Ann(go(term), go(ty))
        raise TranslationError(f"{type(t).__name__} is not an SDC form", "OutOfFragment")

    return go(a)


def lift_context(lattice: Lattice, ctx: Context) -> Context:
    """Translate every binding type, keeping names and grades."""
    return Context(tuple(Binding(b.name, b.grade, sdc_to_ddct(lattice, b.type)) for b in ctx))
