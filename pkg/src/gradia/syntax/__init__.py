"""Shared syntax for every calculus: terms, contexts, parser and printer."""

from gradia.syntax.context import EMPTY, EMPTY_GRADES, Binding, Context, GradeContext
from gradia.syntax.parser import DEFAULT_SORTS, Program, fragment_for, parse, parse_program
from gradia.syntax.printer import print_term
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
    free_vars,
    shift,
    size,
    subst,
    subst2,
)

__all__ = [
    "Ann",
    "App",
    "Arrow",
    "Bind",
    "Binding",
    "Case",
    "Context",
    "DEFAULT_SORTS",
    "EMPTY",
    "EMPTY_GRADES",
    "GApp",
    "GLam",
    "GPair",
    "GradeContext",
    "Inj1",
    "Inj2",
    "Lam",
    "LetPair",
    "Pair",
    "Pi",
    "Prod",
    "Proj1",
    "Proj2",
    "Program",
    "Return",
    "Seal",
    "Sigma",
    "Sort",
    "Sum",
    "Term",
    "TMonad",
    "UnitTm",
    "UnitTy",
    "Unseal",
    "Var",
    "fragment_for",
    "free_vars",
    "parse",
    "parse_program",
    "print_term",
    "shift",
    "size",
    "subst",
    "subst2",
]
