"""Sealing calculus to SDC: ``unseal^g a`` becomes ``bind^g x = a in x``."""

from gradia.exceptions import TranslationError
from gradia.lattice import Grade
from gradia.syntax.context import Context
from gradia.syntax.terms import (
    Bind,
    GApp,
    GLam,
    GPair,
    LetPair,
    Pi,
    Return,
    Seal,
    Sigma,
    Sort,
    Term,
    Unseal,
    Var,
    map_children,
)

_FOREIGN = (Return, Bind, Sort, Pi, Sigma, GLam, GApp, GPair, LetPair)


def seal_to_sdc(a: Term) -> Term:
    """Translate a sealing-calculus term or type homomorphically.

    Raises:
        TranslationError: If ``a`` contains forms outside the sealing calculus
    """
    match a:
        case Seal(grade=g, body=body):
            return Return(g, seal_to_sdc(body))
        case Unseal(grade=g, body=body):
            return Bind(g, seal_to_sdc(body), Var(0, "x"), "x")
    if isinstance(a, _FOREIGN):
        raise TranslationError(f"{type(a).__name__} is not a sealing-calculus form", "OutOfFragment")
    return map_children(a, lambda sub, _: seal_to_sdc(sub))


def seal_context(ctx: Context, level: Grade) -> Context:
    """Target context of a judgment at ``level``: every variable graded ``level``."""
    return ctx.regrade(level)
