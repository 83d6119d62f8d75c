"""Schemas for the dependent calculus configuration."""

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from gradia.lattice import Lattice


class PtsSignature(BaseModel):
    """Sorts, axioms and rules of a pure type system instance."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(default="pts", description="Name used in messages")
    sorts: list[str] = Field(description="Sort names, the first one types Unit")
    axioms: list[tuple[str, str]] = Field(
        default_factory=list, description="Pairs (s1, s2) meaning s1 : s2"
    )
    rules: list[tuple[str, str, str]] = Field(
        default_factory=list,
        description="Triples (s1, s2, s3) allowing Pi/Sigma from s1 into s2 to live in s3",
    )

    @model_validator(mode="after")
    def check_signature(self) -> "PtsSignature":
        if not self.sorts:
            raise ValueError("a signature needs at least one sort")
        if len(set(self.sorts)) != len(self.sorts):
            raise ValueError("duplicate sort names")
        known = set(self.sorts)
        for pair in self.axioms:
            for s in pair:
                if s not in known:
                    raise ValueError(f"axiom mentions unknown sort {s!r}")
        for triple in self.rules:
            for s in triple:
                if s not in known:
                    raise ValueError(f"rule mentions unknown sort {s!r}")
        untyped = [s for s in self.sorts if not any(a == s for a, _ in self.axioms)]
        if untyped:
            raise ValueError(f"sorts without an axiom: {', '.join(untyped)}")
        return self

    def axiom(self, s: str) -> Optional[str]:
        """First ``s2`` with ``s : s2``."""
        return next((s2 for s1, s2 in self.axioms if s1 == s), None)

    def rule(self, s1: str, s2: str) -> Optional[str]:
        """First ``s3`` such that ``(s1, s2, s3)`` is a rule."""
        return next((c for a, b, c in self.rules if a == s1 and b == s2), None)

    @property
    def unit_sort(self) -> str:
        return self.sorts[0]


class DdcConfig(BaseModel):
    """Everything the dependent checker is parameterised by."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    lattice: Lattice = Field(description="Grade lattice, carrying the compile-time grade C")
    pts: PtsSignature = Field(description="Sorts, axioms and rules")
    fuel: int = Field(default=1000, gt=0, description="Conversion rounds and whnf steps")
    join_window: int = Field(default=8, gt=0, description="Reducts per side compared when joining")
