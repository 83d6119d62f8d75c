"""A second, relational reading of the typing rules.

Each rule is written as a set comprehension over the sets its premises
produce, with memoisation on the whole judgment. Levels are raised with
:func:`order_join`, which searches the order instead of using the join
table. Nothing here raises on an ill-typed term: failure is the empty
set. The checkers are tested by comparing their verdicts with these sets.
"""

import logging
from typing import Optional

from gradia.calculi.ddc.schemas import DdcConfig
from gradia.calculi.ddc.semantics import whnf
from gradia.equality.joinability import def_eq
from gradia.equality.schemas import Verdict
from gradia.exceptions import FuelExhaustedError
from gradia.lattice import Grade, Lattice
from gradia.syntax.context import Context
from gradia.syntax.terms import (
    SIMPLE_TYPES,
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
    lower,
    mentions,
    shift,
    subst,
)

NONE: frozenset = frozenset()


def order_join(lattice: Lattice, a: Grade, b: Grade) -> Grade:
    """The least upper bound of ``a`` and ``b``, found from ``leq`` alone."""
    bounds = [k for k in lattice if lattice.leq(a, k) and lattice.leq(b, k)]
    return next(k for k in bounds if all(lattice.leq(k, other) for other in bounds))


def _simple(ty: Term) -> bool:
    if not isinstance(ty, SIMPLE_TYPES):
        return False
    match ty:
        case Arrow(dom=a, cod=b) | Prod(left=a, right=b) | Sum(left=a, right=b):
            return _simple(a) and _simple(b)
        case TMonad(body=a):
            return _simple(a)
    return True


class SimpleOracle:
    """Relational SDC rules; ``sealing=True`` gives the sealing calculus."""

    def __init__(self, lattice: Lattice, sealing: bool = False):
        self.lattice = lattice
        self.sealing = sealing
        self._types: dict = {}
        self._checks: dict = {}

    def types(self, ctx: Context, a: Term, level: Grade) -> frozenset:
        key = (ctx, a, level)
        if key not in self._types:
            self._types[key] = self._synth(ctx, a, level)
        return self._types[key]

    def checks(self, ctx: Context, a: Term, ty: Term, level: Grade) -> bool:
        key = (ctx, a, ty, level)
        if key not in self._checks:
            self._checks[key] = self._against(ctx, a, ty, level)
        return self._checks[key]

    def _synth(self, ctx: Context, a: Term, level: Grade) -> frozenset:
        lat = self.lattice
        match a:
            case Var(index=i):
                if not ctx.has(i):
                    return NONE
                b = ctx.lookup(i)
                return frozenset((b.type,)) if self.sealing or lat.leq(b.grade, level) else NONE
            case UnitTm():
                return frozenset((UnitTy(),))
            case Lam(domain=d, body=body, name=x):
                if not _simple(d):
                    return NONE
                return frozenset(Arrow(d, c) for c in self.types(ctx.extend(x, level, d), body, level))
            case App(fn=f, arg=arg):
                return frozenset(
                    t.cod for t in self.types(ctx, f, level) if isinstance(t, Arrow) and self.checks(ctx, arg, t.dom, level)
                )
            case Pair(first=p, second=q):
                return frozenset(Prod(s, t) for s in self.types(ctx, p, level) for t in self.types(ctx, q, level))
            case Proj1(pair=p):
                return frozenset(t.left for t in self.types(ctx, p, level) if isinstance(t, Prod))
            case Proj2(pair=p):
                return frozenset(t.right for t in self.types(ctx, p, level) if isinstance(t, Prod))
            case Case(scrutinee=s, left=b1, right=b2):
                return frozenset(
                    f.cod
                    for st in self.types(ctx, s, level)
                    if isinstance(st, Sum)
                    for f in self.types(ctx, b1, level)
                    if isinstance(f, Arrow) and f.dom == st.left and self.checks(ctx, b2, Arrow(st.right, f.cod), level)
                )
            case Ann(term=t, type=ty):
                return frozenset((ty,)) if _simple(ty) and self.checks(ctx, t, ty, level) else NONE
            case Return(grade=g, body=body) if not self.sealing:
                return frozenset(TMonad(g, t) for t in self.types(ctx, body, order_join(lat, level, g)))
            case Seal(grade=g, body=body) if self.sealing:
                return frozenset(TMonad(g, t) for t in self.types(ctx, body, order_join(lat, level, g)))
            case Bind(grade=g, scrutinee=s, body=body, name=x) if not self.sealing:
                return frozenset(
                    t
                    for m in self.types(ctx, s, level)
                    if isinstance(m, TMonad) and m.grade == g
                    for t in self.types(ctx.extend(x, order_join(lat, level, g), m.body), body, level)
                )
            case Unseal(grade=g, body=s) if self.sealing:
                if not lat.leq(g, level):
                    return NONE
                return frozenset(m.body for m in self.types(ctx, s, level) if isinstance(m, TMonad) and m.grade == g)
        return NONE

    def _against(self, ctx: Context, a: Term, ty: Term, level: Grade) -> bool:
        lat = self.lattice
        match a:
            case Inj1(body=body):
                return isinstance(ty, Sum) and self.checks(ctx, body, ty.left, level)
            case Inj2(body=body):
                return isinstance(ty, Sum) and self.checks(ctx, body, ty.right, level)
            case Lam(domain=d, body=body, name=x) if isinstance(ty, Arrow):
                return _simple(d) and d == ty.dom and self.checks(ctx.extend(x, level, d), body, ty.cod, level)
            case Pair(first=p, second=q) if isinstance(ty, Prod):
                return self.checks(ctx, p, ty.left, level) and self.checks(ctx, q, ty.right, level)
            case Case(scrutinee=s, left=b1, right=b2):
                return any(
                    self.checks(ctx, b1, Arrow(st.left, ty), level) and self.checks(ctx, b2, Arrow(st.right, ty), level)
                    for st in self.types(ctx, s, level)
                    if isinstance(st, Sum)
                )
            case Return(grade=g, body=body) if not self.sealing and isinstance(ty, TMonad):
                return ty.grade == g and self.checks(ctx, body, ty.body, order_join(lat, level, g))
            case Seal(grade=g, body=body) if self.sealing and isinstance(ty, TMonad):
                return ty.grade == g and self.checks(ctx, body, ty.body, order_join(lat, level, g))
            case Bind(grade=g, scrutinee=s, body=body, name=x) if not self.sealing:
                return any(
                    self.checks(ctx.extend(x, order_join(lat, level, g), m.body), body, ty, level)
                    for m in self.types(ctx, s, level)
                    if isinstance(m, TMonad) and m.grade == g
                )
        return ty in self.types(ctx, a, level)


class DdcOracle:
    """Relational DDC rules over a PTS signature.

    Conversion premises use joinability with ten times the checker's fuel.
    """

    def __init__(self, config: DdcConfig):
        self.config = config
        self.lattice = config.lattice
        self.pts = config.pts
        self.c = config.lattice.c
        self.fuel = config.fuel * 10
        self._types: dict = {}
        self._checks: dict = {}

    # Helpers

    def _whnf(self, t: Term) -> Optional[Term]:
        try:
            return whnf(self.lattice, t, self.fuel)
        except FuelExhaustedError:
            return None

    def conv(self, ctx: Context, a: Term, b: Term) -> bool:
        if a == b:
            return True
        phi = ctx.truncate(self.lattice, self.c).grades()
        result = def_eq(self.lattice, phi, a, b, self.c, fuel=self.fuel, window=self.config.join_window)
        return result.verdict is Verdict.EQUAL

    def _heads(self, types: frozenset, shape: type) -> list[Term]:
        out = []
        for t in types:
            head = self._whnf(t)
            if isinstance(head, shape):
                out.append(head)
        return out

    def sorts(self, ctx: Context, ty: Term, level: Grade) -> frozenset:
        return frozenset(s.name for s in self._heads(self.types(ctx, ty, level), Sort))

    def sorts_truncated(self, ctx: Context, ty: Term, level: Grade) -> frozenset:
        return frozenset(s.name for s in self._heads(self.types_truncated(ctx, ty, level), Sort))

    def _trunc(self, ctx: Context) -> Context:
        return ctx.truncate(self.lattice, self.c)

    def formed(self, ctx: Context, ty: Term) -> bool:
        return bool(self.sorts(self._trunc(ctx), ty, self.c))

    def types_truncated(self, ctx: Context, a: Term, level: Grade) -> frozenset:
        if self.lattice.leq(level, self.c):
            return self.types(ctx, a, level)
        if level == self.lattice.top:
            return self.types(self._trunc(ctx), a, self.c)
        return NONE

    def checks_truncated(self, ctx: Context, a: Term, ty: Term, level: Grade) -> bool:
        if self.lattice.leq(level, self.c):
            return self.checks(ctx, a, ty, level)
        if level == self.lattice.top:
            return self.checks(self._trunc(ctx), a, ty, self.c)
        return False

    # Judgments

    def types(self, ctx: Context, a: Term, level: Grade) -> frozenset:
        key = (ctx, a, level)
        if key not in self._types:
            self._types[key] = self._synth(ctx, a, level) if self.lattice.leq(level, self.c) else NONE
        return self._types[key]

    def checks(self, ctx: Context, a: Term, ty: Term, level: Grade) -> bool:
        key = (ctx, a, ty, level)
        if key not in self._checks:
            self._checks[key] = self.lattice.leq(level, self.c) and self._against(ctx, a, ty, level)
        return self._checks[key]

    def _synth(self, ctx: Context, a: Term, level: Grade) -> frozenset:
        lat, pts = self.lattice, self.pts
        top = lat.top
        match a:
            case Var(index=i):
                if not ctx.has(i):
                    return NONE
                b = ctx.lookup(i)
                return frozenset((b.type,)) if lat.leq(b.grade, level) else NONE
            case Sort(name=s):
                above = pts.axiom(s) if s in pts.sorts else None
                return frozenset((Sort(above),)) if above is not None else NONE
            case UnitTy():
                return frozenset((Sort(pts.unit_sort),))
            case UnitTm():
                return frozenset((UnitTy(),))
            case Pi(domain=d, body=body, name=x) | Sigma(domain=d, body=body, name=x):
                out = set()
                for s1 in self.sorts(ctx, d, level):
                    for s2 in self.sorts(ctx.extend(x, level, d), body, level):
                        s3 = pts.rule(s1, s2)
                        if s3 is not None:
                            out.add(Sort(s3))
                return frozenset(out)
            case Sum(left=l, right=r):
                return frozenset(Sort(s) for s in self.sorts(ctx, l, level) & self.sorts(ctx, r, level))
            case GLam(grade=g, domain=d, body=body, name=x):
                if not self.sorts_truncated(ctx, d, top):
                    return NONE
                inner = ctx.extend(x, order_join(lat, g, level), d)
                candidates = (Pi(g, d, cod, x) for cod in self.types(inner, body, level))
                return frozenset(p for p in candidates if self.formed(ctx, p))
            case GApp(fn=f, arg=arg, grade=g):
                return frozenset(
                    subst(p.body, arg)
                    for p in self._heads(self.types(ctx, f, level), Pi)
                    if p.grade == g and self.checks_truncated(ctx, arg, p.domain, order_join(lat, g, level))
                )
            case GPair(first=p, grade=g, second=q):
                candidates = (
                    Sigma(g, s, shift(t, 1), "x")
                    for s in self.types_truncated(ctx, p, order_join(lat, g, level))
                    for t in self.types(ctx, q, level)
                )
                return frozenset(w for w in candidates if self.formed(ctx, w))
            case LetPair():
                return self._let_pair(ctx, a, level)
            case Case(scrutinee=s, left=b1, right=b2):
                out = set()
                for st in self._heads(self.types(ctx, s, level), Sum):
                    lefts = self._branches(ctx, b1, st.left, level)
                    rights = self._branches(ctx, b2, st.right, level)
                    out.update(r1 for r1 in lefts for r2 in rights if self.conv(ctx, r2, r1))
                return frozenset(out)
            case Ann(term=t, type=ty):
                if self.sorts_truncated(ctx, ty, top) and self.checks(ctx, t, ty, level):
                    return frozenset((ty,))
        return NONE

    def _branches(self, ctx: Context, branch: Term, side: Term, level: Grade) -> list[Term]:
        return [
            lower(p.body, 1)
            for p in self._heads(self.types(ctx, branch, level), Pi)
            if p.grade == self.lattice.bot and not mentions(p.body, 0) and self.conv(ctx, p.domain, side)
        ]

    def _sigmas(self, ctx: Context, a: LetPair, level: Grade) -> list[Sigma]:
        return [w for w in self._heads(self.types(ctx, a.scrutinee, level), Sigma) if w.grade == a.grade]

    def _inner(self, ctx: Context, a: LetPair, w: Sigma, level: Grade) -> Context:
        x, y, _ = a.names
        return ctx.extend(x, order_join(self.lattice, a.grade, level), w.domain).extend(y, level, w.body)

    def _let_pair(self, ctx: Context, a: LetPair, level: Grade) -> frozenset:
        out = set()
        x, y, z = a.names
        for w in self._sigmas(ctx, a, level):
            inner = self._inner(ctx, a, w, level)
            if a.motive is not None:
                if not self.sorts(self._trunc(ctx).extend(z, self.c, w), a.motive, self.c):
                    continue
                refined = subst(shift(a.motive, 2, 1), GPair(Var(1, x), a.grade, Var(0, y)))
                if self.checks(inner, a.body, refined, level):
                    out.add(subst(a.motive, a.scrutinee))
                continue
            for t in self.types(inner, a.body, level):
                if not mentions(t, 0, 1):
                    out.add(lower(t, 2))
                elif a.body == Var(0):
                    first = LetPair(a.grade, a.scrutinee, Var(1, x), None, a.names)
                    if self.types_truncated(ctx, first, self.lattice.top):
                        out.add(subst(w.body, first))
        return frozenset(out)

    def _against(self, ctx: Context, a: Term, ty: Term, level: Grade) -> bool:
        lat = self.lattice
        match a:
            case Inj1(body=body) | Inj2(body=body):
                head = self._whnf(ty)
                if not isinstance(head, Sum):
                    return False
                return self.checks(ctx, body, head.left if isinstance(a, Inj1) else head.right, level)
            case GLam(grade=g, domain=d, body=body, name=x):
                head = self._whnf(ty)
                if isinstance(head, Pi):
                    return (
                        head.grade == g
                        and bool(self.sorts_truncated(ctx, d, lat.top))
                        and self.conv(ctx, d, head.domain)
                        and self.checks(ctx.extend(x, order_join(lat, g, level), d), body, head.body, level)
                    )
            case GPair(first=p, grade=g, second=q):
                head = self._whnf(ty)
                if isinstance(head, Sigma):
                    return (
                        head.grade == g
                        and self.checks_truncated(ctx, p, head.domain, order_join(lat, g, level))
                        and self.checks(ctx, q, subst(head.body, p), level)
                    )
            case Case(scrutinee=s, left=b1, right=b2):
                result = shift(ty, 1)
                return any(
                    self.checks(ctx, b1, Pi(lat.bot, st.left, result, "_"), level)
                    and self.checks(ctx, b2, Pi(lat.bot, st.right, result, "_"), level)
                    for st in self._heads(self.types(ctx, s, level), Sum)
                )
            case LetPair(motive=None):
                return any(
                    self.checks(self._inner(ctx, a, w, level), a.body, shift(ty, 2), level)
                    for w in self._sigmas(ctx, a, level)
                )
        return any(self.conv(ctx, t, ty) for t in self.types(ctx, a, level))


def oracle_check(oracle, ctx: Context, a: Term, level: Grade) -> Optional[Term]:
    """The unique type the rules assign, or None when there is none."""
    found = oracle.types(ctx, a, level)
    if len(found) > 1:
        logging.warning(f"oracle found {len(found)} types for one term")
        return None
    return next(iter(found), None)
