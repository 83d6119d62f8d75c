"""Schemas for definitional equality results."""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from gradia.syntax.terms import Term


class Verdict(str, Enum):
    """Outcome of a joinability search."""

    EQUAL = "Equal"
    NOT_EQUAL = "NotEqual"
    FUEL_EXHAUSTED = "FuelExhausted"


class JoinResult(BaseModel):
    """Verdict of ``def_eq`` with the evidence that produced it."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    verdict: Verdict = Field(description="Equal, NotEqual or FuelExhausted")
    witnesses: Optional[tuple[Term, Term]] = Field(
        default=None,
        description="On Equal, the two reducts found indistinguishable",
    )
    reducts: tuple[Term, Term] = Field(
        description="Latest reduct of each side when the search stopped"
    )
    steps_used: int = Field(default=0, description="Parallel-reduction rounds taken")
    chains: Optional[tuple[tuple[Term, ...], tuple[Term, ...]]] = Field(
        default=None, description="Every reduct of both sides, when requested"
    )

    @property
    def equal(self) -> bool:
        return self.verdict is Verdict.EQUAL
