"""Schemas for the property-suite harness."""

import operator
from typing import Annotated, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from gradia.calculi.ddc.pts import type_in_type
from gradia.calculi.ddc.schemas import PtsSignature
from gradia.config import settings
from gradia.lattice import Lattice

Fragment = Literal["sdc", "seal", "ddc", "ddc-pi"]


class GenConfig(BaseModel):
    """Everything a suite run depends on; equal configs give equal reports."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    seed: int = Field(default_factory=lambda: settings.default_seed, description="Base seed of every trial RNG")
    trials: int = Field(default_factory=lambda: settings.default_trials, gt=0, description="Number of trials")
    max_size: int = Field(default_factory=lambda: settings.max_size, gt=0, description="AST node bound for generated terms")
    lattice: Lattice = Field(description="Grade lattice, with its designated C")
    pts: PtsSignature = Field(default_factory=type_in_type, description="Signature for the dependent calculus")
    fragment: Fragment = Field(default="sdc", description="Calculus the trials draw terms from")
    free_vars: int = Field(default=0, ge=0, le=4, description="Bindings in generated open contexts")
    fuel: int = Field(default_factory=lambda: settings.default_fuel, gt=0, description="Checker and evaluator fuel")
    steps: int = Field(default=30, gt=0, description="Reduction steps followed per trial")
    retries: int = Field(default=60, gt=0, description="Generation attempts before giving up")


class TrialResult(BaseModel):
    """Outcome of one trial."""

    index: int = Field(description="Trial index within the run")
    status: Literal["passed", "failed", "skipped"] = Field(description="Trial verdict")
    detail: Optional[str] = Field(default=None, description="Why the trial failed or was skipped")
    counterexample: Optional[list[str]] = Field(
        default=None, description="Minimised failing input, one printed term per entry"
    )


class SuiteReport(BaseModel):
    """Summary of a suite run."""

    suite: str
    fragment: str
    lattice: str
    seed: int
    trials: int
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    failures: list[TrialResult] = Field(default_factory=list)
    skip_reasons: dict[str, int] = Field(default_factory=dict)
    elapsed: Optional[float] = Field(default=None, description="Wall time in seconds, when timing is requested")

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def summary(self) -> str:
        line = (
            f"{self.suite} [{self.fragment}, {self.lattice}, seed {self.seed}]: "
            f"{self.passed} passed, {self.failed} failed, {self.skipped} skipped"
        )
        if self.elapsed is not None:
            line += f" in {self.elapsed:.2f}s"
        return line


# Graph state


class BatchState(BaseModel):
    """Payload of one fanned-out batch of trials."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    suite: str
    config: GenConfig
    indices: list[int]


class SuiteState(BaseModel):
    """State of the suite graph."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    suite: str = Field(description="Name of the suite to run")
    config: GenConfig = Field(description="Generation and checking configuration")
    batch_size: int = Field(default_factory=lambda: settings.batch_size, gt=0)
    batches: list[list[int]] = Field(default_factory=list, description="Trial indices per batch")
    results: Annotated[list[TrialResult], operator.add] = Field(
        default_factory=list, description="Trial outcomes from every batch (add reducer)"
    )
    report: Optional[SuiteReport] = Field(default=None, description="Final report")
