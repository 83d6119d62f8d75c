"""Pydantic models for command-line invocations and their results."""

from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

Command = Literal["check", "eval", "erase", "eq", "translate", "noninterfere"]
System = Literal["sdc", "seal", "ddc"]
Target = Literal["sdc", "ddc", "icc", "icc-erased"]


class Invocation(BaseModel):
    """One parsed command line."""

    command: Command = Field(description="Subcommand to run")
    inputs: list[Path] = Field(default_factory=list, description="Source files, in output order")
    lattice: Optional[str] = Field(
        default=None, description="Lattice file or built-in name; defaults by system"
    )
    pts: Optional[str] = Field(
        default=None, description="PTS signature file or built-in name; type-in-type unless a suite says otherwise"
    )
    level: Optional[str] = Field(default=None, description="Observer grade name")
    fuel: Optional[int] = Field(default=None, gt=0, description="Evaluation and equality fuel")
    trace: bool = Field(default=False, description="Print derivation trees")
    system: Optional[System] = Field(default=None, description="Calculus; defaults by file extension")
    source: Optional[System] = Field(default=None, description="Source calculus of a translation")
    target: Optional[Target] = Field(default=None, description="Target calculus of a translation")
    suite: str = Field(default="noninterference", description="Suite name, or 'all'")
    fragment: Optional[str] = Field(default=None, description="Fragment the suite draws terms from")
    seed: Optional[int] = Field(default=None, description="Suite seed")
    trials: Optional[int] = Field(default=None, gt=0, description="Trials per suite")
    max_size: Optional[int] = Field(default=None, gt=0, description="Generated term size bound")
    verbose: int = Field(default=0, ge=0, description="Repeat count of --verbose")
    timing: bool = Field(default=False, description="Report wall time")
    report_dir: Optional[Path] = Field(default=None, description="Directory for suite detail files")


class FileResult(BaseModel):
    """What one input produced: printed output or an error, plus its exit code."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    source: str = Field(description="Input file, or a label for multi-file commands")
    output: Optional[str] = Field(default=None, description="Printed result on success")
    error: Optional[str] = Field(default=None, description="Rendered error on failure")
    exit_code: int = Field(default=0, description="0 on success, else the error's exit code")
    trace: Optional[Any] = Field(default=None, description="Derivation tree when tracing")

    @property
    def ok(self) -> bool:
        return self.exit_code == 0
