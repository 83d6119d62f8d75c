"""One interface over the three calculi for the property suites."""

from typing import Optional

from gradia.calculi.ddc.erasure import erase
from gradia.calculi.ddc.semantics import DdcStepper, is_value as ddc_is_value, whnf
from gradia.calculi.grading import grade, indist
from gradia.calculi.sdc.semantics import is_value as sdc_is_value, sdc_step
from gradia.equality.joinability import def_eq
from gradia.equality.schemas import Verdict
from gradia.harness.generate import Checkers
from gradia.harness.schemas import GenConfig
from gradia.lattice import Grade
from gradia.syntax.context import Context, GradeContext
from gradia.syntax.terms import Term


class Calculus:
    """Typing, stepping and observation for the configured fragment."""

    def __init__(self, cfg: GenConfig, checkers: Optional[Checkers] = None):
        self.cfg = cfg
        self.lattice = cfg.lattice
        self.fragment = cfg.fragment
        self.checkers = checkers or Checkers(cfg)
        self.dependent = cfg.fragment in ("ddc", "ddc-pi")
        self._stepper = DdcStepper(cfg.lattice)

    @property
    def checker(self):
        return self.checkers.for_fragment(self.fragment)

    def levels(self) -> list[Grade]:
        if self.dependent:
            return self.lattice.below(self.lattice.c)
        return list(self.lattice)

    def synth(self, ctx: Context, a: Term, level: Grade) -> Optional[Term]:
        """The synthesized type, or None when ``a`` is rejected or fuel ran out."""
        return self.checkers.synth(self.fragment, ctx, a, level)

    def synth_truncated(self, ctx: Context, a: Term, level: Grade) -> Optional[Term]:
        return self.checkers.synth_truncated(self.fragment, ctx, a, level)

    def step(self, a: Term) -> Optional[Term]:
        return self._stepper(a) if self.dependent else sdc_step(a)

    def is_value(self, a: Term) -> bool:
        return ddc_is_value(a) if self.dependent else sdc_is_value(a)

    def indist(self, phi: GradeContext, a: Term, b: Term, level: Grade) -> bool:
        return indist(self.lattice, phi, a, b, level)

    def grade(self, phi: GradeContext, a: Term, level: Grade) -> bool:
        return grade(self.lattice, phi, a, level)

    def erase(self, a: Term, level: Grade) -> Term:
        return erase(self.lattice, a, level)

    def whnf(self, a: Term) -> Term:
        return whnf(self.lattice, a, self.cfg.fuel) if self.dependent else a

    def same_type(self, ctx: Context, found: Term, expected: Term) -> Optional[bool]:
        """Type equality: structural for simple types, joinability at C otherwise.

        None when joinability ran out of fuel.
        """
        if found == expected:
            return True
        if not self.dependent:
            return False
        lat = self.lattice
        result = def_eq(lat, ctx.truncate(lat, lat.c).grades(), found, expected, lat.c, fuel=self.cfg.fuel)
        if result.verdict is Verdict.FUEL_EXHAUSTED:
            return None
        return result.verdict is Verdict.EQUAL
