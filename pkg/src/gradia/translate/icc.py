"""Extraction of DDC Pi-terms into ICC* with relevant and irrelevant binders.

Grades at or below C are run-time relevant and become ``( )`` forms; every
other grade becomes a ``[ ]`` form. :func:`icc_star_erase` then removes the
irrelevant abstractions and arguments, and a small normal-order reducer
relates the erased images of DDC reductions.
"""

from collections import deque
from dataclasses import dataclass, field, replace
from typing import Optional

from gradia.exceptions import FuelExhaustedError, TranslationError
from gradia.lattice import Grade, Lattice
from gradia.syntax.printer import KEYWORDS
from gradia.syntax.terms import (
    GApp,
    GLam,
    Pi,
    Sort,
    Term,
    Var,
    children,
    lower,
    mentions,
    subst,
)


@dataclass(frozen=True, slots=True)
class IccPi(Term):
    relevant: bool
    domain: Term
    body: Term
    name: str = field(default="x", compare=False)
    _children = (("domain", 0), ("body", 1))


@dataclass(frozen=True, slots=True)
class IccLam(Term):
    """A lambda; erased lambdas carry no domain."""

    relevant: bool
    domain: Optional[Term]
    body: Term
    name: str = field(default="x", compare=False)
    _children = (("domain", 0), ("body", 1))


@dataclass(frozen=True, slots=True)
class IccApp(Term):
    fn: Term
    arg: Term
    relevant: bool
    _children = (("fn", 0), ("arg", 0))


def ddc_to_icc(lattice: Lattice, a: Term, c: Optional[Grade] = None) -> Term:
    """Translate a term of the Pi fragment of DDC.

    Args:
        lattice: Grade lattice
        a: Term built from sorts, variables and Pi-forms only
        c: Relevance threshold, the lattice's C by default

    Raises:
        TranslationError: On any form outside the Pi fragment
    """
    c = lattice.c if c is None else c

    def go(t: Term) -> Term:
        match t:
            case Var() | Sort():
                return t
            case Pi(grade=g, domain=d, body=b, name=x):
                return IccPi(lattice.leq(g, c), go(d), go(b), x)
            case GLam(grade=g, domain=d, body=b, name=x):
                return IccLam(lattice.leq(g, c), go(d), go(b), x)
            case GApp(fn=f, arg=arg, grade=g):
                return IccApp(go(f), go(arg), lattice.leq(g, c))
        raise TranslationError(
            f"{type(t).__name__} is outside the Pi fragment extracted to ICC*", "OutOfFragment"
        )

    return go(a)


def icc_star_erase(t: Term) -> Term:
    """Drop irrelevant lambdas and arguments and every lambda domain.

    Pi types keep both kinds of binder.

    Raises:
        TranslationError: If an irrelevant variable is used relevantly
    """
    match t:
        case Var() | Sort():
            return t
        case IccPi(relevant=r, domain=d, body=b, name=x):
            return IccPi(r, icc_star_erase(d), icc_star_erase(b), x)
        case IccLam(relevant=True, body=b, name=x):
            return IccLam(True, None, icc_star_erase(b), x)
        case IccLam(relevant=False, body=b, name=x):
            body = icc_star_erase(b)
            if mentions(body, 0):
                raise TranslationError(f"irrelevant variable {x} survives erasure", "IrrelevantUse")
            return lower(body, 1)
        case IccApp(fn=f, relevant=False):
            return icc_star_erase(f)
        case IccApp(fn=f, arg=arg, relevant=True):
            return IccApp(icc_star_erase(f), icc_star_erase(arg), True)
    raise TranslationError(f"{type(t).__name__} is not an ICC* form", "OutOfFragment")


# Reduction


def _contract(t: Term) -> Optional[Term]:
    if isinstance(t, IccApp) and isinstance(t.fn, IccLam) and t.fn.relevant == t.relevant:
        return subst(t.fn.body, t.arg)
    return None


def icc_step(t: Term) -> Optional[Term]:
    """One normal-order beta step, or None on a normal form."""
    reduct = _contract(t)
    if reduct is not None:
        return reduct
    for name, _, sub in children(t):
        inner = icc_step(sub)
        if inner is not None:
            return _rebuild(t, name, inner)
    return None


def _rebuild(t: Term, name: str, sub: Term) -> Term:
    return replace(t, **{name: sub})


def icc_reducts(t: Term) -> list[Term]:
    """Every one-step beta reduct of ``t``."""
    out = []
    top = _contract(t)
    if top is not None:
        out.append(top)
    for name, _, sub in children(t):
        out.extend(_rebuild(t, name, r) for r in icc_reducts(sub))
    return out


def icc_normalize(t: Term, fuel: int = 1000) -> Term:
    """Normal-order normal form.

    Raises:
        FuelExhaustedError: If ``fuel`` steps do not reach one
    """
    for _ in range(fuel):
        nxt = icc_step(t)
        if nxt is None:
            return t
        t = nxt
    raise FuelExhaustedError(f"ICC* term not normal after {fuel} steps", "FuelExhausted")


def icc_reachable(source: Term, target: Term, max_steps: int = 8, max_states: int = 4096) -> Optional[int]:
    """Fewest beta steps from ``source`` to ``target``, or None if not found within bounds."""
    seen = {source}
    queue = deque([(source, 0)])
    while queue:
        t, depth = queue.popleft()
        if t == target:
            return depth
        if depth == max_steps:
            continue
        for r in icc_reducts(t):
            if r not in seen and len(seen) < max_states:
                seen.add(r)
                queue.append((r, depth + 1))
    return None


# Printing


def print_icc(t: Term, names: tuple[str, ...] = ()) -> str:
    """Render ``Pi (x:A). B``, ``\\[x:A].b``, ``f (a)``, ``f [a]`` and erased ``\\x.b``."""

    def fresh(hint: str, scope: tuple[str, ...]) -> str:
        base = hint if hint and hint != "_" else "x"
        candidate, n = base, 0
        while candidate in scope or candidate in KEYWORDS:
            n += 1
            candidate = f"{base}{n}"
        return candidate

    def show(u: Term, scope: tuple[str, ...]) -> str:
        match u:
            case Var(index=i):
                return scope[len(scope) - 1 - i] if i < len(scope) else f"#{i}"
            case Sort(name=s):
                return s
            case IccPi(relevant=r, domain=d, body=b, name=x):
                v = fresh(x, scope)
                binder = f"({v}:{show(d, scope)})" if r else f"[{v}:{show(d, scope)}]"
                return f"Pi {binder}. {show(b, scope + (v,))}"
            case IccLam(relevant=r, domain=d, body=b, name=x):
                v = fresh(x, scope)
                if d is None:
                    return f"\\{v}. {show(b, scope + (v,))}"
                binder = f"({v}:{show(d, scope)})" if r else f"[{v}:{show(d, scope)}]"
                return f"\\{binder}. {show(b, scope + (v,))}"
            case IccApp(fn=f, arg=arg, relevant=r):
                head = show(f, scope) if isinstance(f, (Var, Sort, IccApp)) else f"({show(f, scope)})"
                return f"{head} ({show(arg, scope)})" if r else f"{head} [{show(arg, scope)}]"
        return f"<{type(u).__name__}>"

    return show(t, names)
