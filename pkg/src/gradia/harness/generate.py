"""Type-directed generation of well-typed samples.

Terms are built by inverting the typing rules for a chosen target type, so
they synthesize exactly that type: every injection is placed directly under
an ascription and every other form is synthesizable from its parts. The
dependent calculus reuses the simple generator through the embedding and
then wraps results in polymorphic and type-level redexes. Every emitted
sample is re-checked by the real checker before it leaves this module.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Iterator, Optional

from gradia.calculi.ddc.checker import DdcChecker
from gradia.calculi.ddc.schemas import DdcConfig
from gradia.calculi.sdc.checker import SdcChecker, SealChecker
from gradia.exceptions import FuelExhaustedError, GenerationStuck, TypeCheckError
from gradia.harness.schemas import GenConfig
from gradia.lattice import Grade, Lattice
from gradia.syntax.context import EMPTY, Context
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
    size,
)
from gradia.translate.embedding import lift_context, sdc_to_ddct


@dataclass(frozen=True)
class Sample:
    """A generated judgment: terms checked in ``ctx`` at ``level``.

    ``terms`` are what shrinking may cut down; ``types`` and ``grades`` are
    fixed parameters of the property. ``scopes`` lists, per term, the names
    bound around it beyond ``ctx``.
    """

    ctx: Context
    terms: tuple[Term, ...]
    level: Grade
    types: tuple[Term, ...] = ()
    grades: tuple[Grade, ...] = ()
    scopes: tuple[tuple[str, ...], ...] = field(default=())

    def with_terms(self, terms: tuple[Term, ...]) -> "Sample":
        return Sample(self.ctx, terms, self.level, self.types, self.grades, self.scopes)


def trial_rng(seed: int, index: int) -> random.Random:
    """Independent RNG per trial, so results do not depend on scheduling."""
    return random.Random(f"{seed}:{index}")


class TermGenerator:
    """Inhabitants of simple types for SDC (``modal="sdc"``) or the sealing calculus."""

    def __init__(self, rng: random.Random, lattice: Lattice, modal: str = "sdc"):
        self.rng = rng
        self.lattice = lattice
        self.modal = modal

    def grade(self) -> Grade:
        return self.rng.choice(list(self.lattice))

    def type_(self, depth: int = 2) -> Term:
        if depth <= 0 or self.rng.random() < 0.35:
            return UnitTy()
        pick = self.rng.randrange(4)
        if pick == 0:
            return Arrow(self.type_(depth - 1), self.type_(depth - 1))
        if pick == 1:
            return Prod(self.type_(depth - 1), self.type_(depth - 1))
        if pick == 2:
            return Sum(self.type_(depth - 1), self.type_(depth - 1))
        return TMonad(self.grade(), self.type_(depth - 1))

    def context(self, n: int) -> Context:
        ctx = EMPTY
        for i in range(n):
            ctx = ctx.extend(f"x{i}", self.grade(), self.type_(1))
        return ctx

    def _visible(self, ctx: Context, ty: Term, level: Grade) -> list[int]:
        out = []
        for i in range(len(ctx)):
            b = ctx.lookup(i)
            if b.type == ty and (self.modal == "seal" or self.lattice.leq(b.grade, level)):
                out.append(i)
        return out

    def term(self, ctx: Context, ty: Term, level: Grade, budget: int) -> Term:
        """A term synthesizing exactly ``ty`` at ``level`` in ``ctx``."""
        names = ctx.names()
        candidates = self._visible(ctx, ty, level)
        if candidates and (budget <= 2 or self.rng.random() < 0.45):
            i = self.rng.choice(candidates)
            return Var(i, names[len(names) - 1 - i])
        if budget > 4 and self.rng.random() < 0.35:
            return self.elim(ctx, ty, level, budget)
        return self.intro(ctx, ty, level, budget)

    def intro(self, ctx: Context, ty: Term, level: Grade, budget: int) -> Term:
        lat = self.lattice
        rest = max(budget - 1, 1)
        match ty:
            case Arrow(dom=a, cod=b):
                x = f"v{len(ctx)}"
                return Lam(a, self.term(ctx.extend(x, level, a), b, level, rest), x)
            case Prod(left=a, right=b):
                return Pair(self.term(ctx, a, level, rest // 2 + 1), self.term(ctx, b, level, rest // 2 + 1))
            case Sum(left=a, right=b):
                if self.rng.random() < 0.5:
                    return Ann(Inj1(self.term(ctx, a, level, rest)), ty)
                return Ann(Inj2(self.term(ctx, b, level, rest)), ty)
            case TMonad(grade=g, body=a):
                body = self.term(ctx, a, lat.join(level, g), rest)
                return Seal(g, body) if self.modal == "seal" else Return(g, body)
        return UnitTm()

    def elim(self, ctx: Context, ty: Term, level: Grade, budget: int) -> Term:
        rest = budget // 3 + 1
        pick = self.rng.randrange(4)
        if pick == 0:
            b = self.type_(1)
            return App(self.term(ctx, Arrow(b, ty), level, rest), self.term(ctx, b, level, rest))
        if pick == 1:
            b = self.type_(1)
            if self.rng.random() < 0.5:
                return Proj1(self.term(ctx, Prod(ty, b), level, rest))
            return Proj2(self.term(ctx, Prod(b, ty), level, rest))
        if pick == 2:
            a1, a2 = self.type_(1), self.type_(1)
            return Case(
                self.term(ctx, Sum(a1, a2), level, rest),
                self.term(ctx, Arrow(a1, ty), level, rest),
                self.term(ctx, Arrow(a2, ty), level, rest),
            )
        return self.modal_elim(ctx, ty, level, budget)

    def modal_elim(self, ctx: Context, ty: Term, level: Grade, budget: int) -> Term:
        lat = self.lattice
        rest = budget // 2 + 1
        if self.modal == "seal":
            g = self.rng.choice(lat.below(level))
            return Unseal(g, self.term(ctx, TMonad(g, ty), level, rest))
        g = self.grade()
        a = self.type_(1)
        x = f"v{len(ctx)}"
        scrutinee = self.term(ctx, TMonad(g, a), level, rest)
        body = self.term(ctx.extend(x, lat.join(level, g), a), ty, level, rest)
        return Bind(g, scrutinee, body, x)


# Dependent wrappers


def poly_id(lattice: Lattice, sort: str) -> Term:
    """``(\\X:^top s. \\y:^bot X. y : Pi X:^top s. Pi y:^bot X. X)``."""
    s = Sort(sort)
    ty = Pi(lattice.top, s, Pi(lattice.bot, Var(0, "X"), Var(1, "X"), "y"), "X")
    return Ann(GLam(lattice.top, s, GLam(lattice.bot, Var(0, "X"), Var(0, "y"), "y"), "X"), ty)


def type_id(lattice: Lattice, sort: str) -> Term:
    """``(\\X:^bot s. X : Pi X:^bot s. s)``, the identity on types."""
    s = Sort(sort)
    return Ann(GLam(lattice.bot, s, Var(0, "X"), "X"), Pi(lattice.bot, s, s, "X"))


def enrich(rng: random.Random, lattice: Lattice, sort: str, a: Term, ty: Term) -> tuple[Term, Term]:
    """Wrap a DDC term of a small type in a dependent redex with the same meaning."""
    pick = rng.randrange(4)
    if pick == 0:
        applied = GApp(GApp(poly_id(lattice, sort), ty, lattice.top), a, lattice.bot)
        return applied, ty
    if pick == 1:
        return Ann(a, GApp(type_id(lattice, sort), ty, lattice.bot)), ty
    if pick == 2:
        package = Sigma(lattice.top, Sort(sort), Var(0, "X"), "X")
        return Ann(GPair(ty, lattice.top, a), package), package
    return a, ty


# Checking helpers


class Checkers:
    """The real checkers, configured once per sample source."""

    def __init__(self, cfg: GenConfig):
        self.cfg = cfg
        self.sdc = SdcChecker(cfg.lattice)
        self.seal = SealChecker(cfg.lattice)
        self.ddc = DdcChecker(DdcConfig(lattice=cfg.lattice, pts=cfg.pts, fuel=cfg.fuel))

    def for_fragment(self, fragment: str):
        if fragment == "seal":
            return self.seal
        if fragment in ("ddc", "ddc-pi"):
            return self.ddc
        return self.sdc

    def synth(self, fragment: str, ctx: Context, a: Term, level: Grade) -> Optional[Term]:
        try:
            return self.for_fragment(fragment).check(ctx, a, level)
        except (TypeCheckError, FuelExhaustedError):
            return None

    def synth_truncated(self, fragment: str, ctx: Context, a: Term, level: Grade) -> Optional[Term]:
        """Like :meth:`synth`; the dependent calculus uses the truncated judgment."""
        if fragment not in ("ddc", "ddc-pi"):
            return self.synth(fragment, ctx, a, level)
        try:
            return self.ddc.check_truncated(ctx, a, level)
        except (TypeCheckError, FuelExhaustedError):
            return None


class SampleSource:
    """Draws samples for one trial from its own RNG."""

    def __init__(self, cfg: GenConfig, rng: random.Random, checkers: Optional[Checkers] = None):
        self.cfg = cfg
        self.rng = rng
        self.lattice = cfg.lattice
        self.checkers = checkers or Checkers(cfg)
        modal = "seal" if cfg.fragment == "seal" else "sdc"
        self.gen = TermGenerator(rng, cfg.lattice, modal)

    @property
    def dependent(self) -> bool:
        return self.cfg.fragment in ("ddc", "ddc-pi")

    def levels(self) -> list[Grade]:
        """Observer levels a judgment may use: DDC stays at or below C."""
        if self.dependent:
            return self.lattice.below(self.lattice.c)
        return list(self.lattice)

    def level(self) -> Grade:
        return self.rng.choice(self.levels())

    def _budget(self) -> int:
        return self.rng.randint(2, max(self.cfg.max_size // 2, 3))

    def _retry(self, build, what: str):
        for _ in range(self.cfg.retries):
            sample = build()
            if sample is not None:
                return sample
        raise GenerationStuck(f"no {what} after {self.cfg.retries} attempts", "GenerationStuck")

    def _fits(self, *terms: Term) -> bool:
        return all(size(t) <= self.cfg.max_size for t in terms)

    def _lift(self, ctx: Context, a: Term, ty: Term) -> tuple[Context, Term, Term]:
        if not self.dependent:
            return ctx, a, ty
        return lift_context(self.lattice, ctx), sdc_to_ddct(self.lattice, a), sdc_to_ddct(self.lattice, ty)

    def typed(self, free_vars: Optional[int] = None, level: Optional[Grade] = None) -> Sample:
        """A well-typed ``(ctx, a, level)``; ``types[0]`` is the synthesized type.

        Raises:
            GenerationStuck: If no sample fits the size bound within the retry budget
        """
        n = self.cfg.free_vars if free_vars is None else free_vars

        def build() -> Optional[Sample]:
            lvl = level if level is not None else self.level()
            ctx = self.gen.context(n)
            ty = self.gen.type_()
            a = self.gen.term(ctx, ty, lvl, self._budget())
            if not self._fits(a):
                return None
            ctx, a, ty = self._lift(ctx, a, ty)
            if self.dependent and self.rng.random() < 0.4:
                # wrappers are not counted against the size bound
                a, ty = enrich(self.rng, self.lattice, self.cfg.pts.unit_sort, a, ty)
            found = self.checkers.synth(self.cfg.fragment, ctx, a, lvl)
            if found is None:
                logging.debug("generator produced an ill-typed sample; retrying")
                return None
            return Sample(ctx, (a,), lvl, types=(found,))

        return self._retry(build, "well-typed term")

    def hole(self, copies: int = 2) -> Sample:
        """A term with one hidden variable and closed fillers for it.

        ``terms`` is ``(b, v1, ..., vn)`` where ``x :^l0 A |- b :^k B`` with
        ``l0`` not below ``k``, and each ``vi`` checks at ``l0`` against ``A``.
        ``grades`` is ``(l0,)`` and ``types`` is ``(A, B)``.
        """

        def build() -> Optional[Sample]:
            k = self.level()
            hidden = [g for g in self.lattice if not self.lattice.leq(g, k)]
            if not hidden:
                return None
            l0 = self.rng.choice(hidden)
            a_ty = self.gen.type_(1)
            b_ty = self.gen.type_()
            inner = EMPTY.extend("x", l0, a_ty)
            b = self.gen.term(inner, b_ty, k, self._budget())
            fillers = [self.gen.term(EMPTY, a_ty, l0, self._budget()) for _ in range(copies)]
            if self.dependent:
                inner = lift_context(self.lattice, inner)
                b = sdc_to_ddct(self.lattice, b)
                fillers = [sdc_to_ddct(self.lattice, v) for v in fillers]
                a_ty, b_ty = sdc_to_ddct(self.lattice, a_ty), sdc_to_ddct(self.lattice, b_ty)
            if not self._fits(b, *fillers):
                return None
            found = self.checkers.synth(self.cfg.fragment, inner, b, k)
            if found is None:
                return None
            for v in fillers:
                if self.checkers.synth_truncated(self.cfg.fragment, EMPTY, v, l0) is None:
                    return None
            scopes = (("x",),) + tuple(() for _ in fillers)
            return Sample(EMPTY, (b, *fillers), k, types=(a_ty, found), grades=(l0,), scopes=scopes)

        return self._retry(build, "term with a hidden variable")

    def type_pair(self) -> Sample:
        """Two well-formed closed DDC types, each possibly hidden behind a redex."""

        def one() -> Term:
            ty = sdc_to_ddct(self.lattice, self.gen.type_())
            if self.rng.random() < 0.5:
                return GApp(type_id(self.lattice, self.cfg.pts.unit_sort), ty, self.lattice.bot)
            return ty

        def build() -> Optional[Sample]:
            a, b = one(), one()
            if self.rng.random() < 0.3:
                b = a
            for t in (a, b):
                if self.checkers.synth("ddc", EMPTY, t, self.lattice.c) is None:
                    return None
            return Sample(EMPTY, (a, b), self.lattice.c)

        return self._retry(build, "pair of types")


def gen_well_typed(cfg: GenConfig) -> Iterator[tuple[Context, Term, Grade, Term]]:
    """Stream ``(ctx, a, level, A)`` tuples, one per trial index.

    Trials whose generation gets stuck are logged and skipped.
    """
    checkers = Checkers(cfg)
    for index in range(cfg.trials):
        source = SampleSource(cfg, trial_rng(cfg.seed, index), checkers)
        try:
            sample = source.typed()
        except GenerationStuck as e:
            logging.info(f"trial {index}: {e.detail}")
            continue
        yield sample.ctx, sample.terms[0], sample.level, sample.types[0]
