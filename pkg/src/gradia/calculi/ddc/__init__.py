"""The dependent dependency calculus over a PTS signature."""

from gradia.calculi.ddc.checker import DdcChecker, ddc_check
from gradia.calculi.ddc.erasure import erase
from gradia.calculi.ddc.indist import ddc_grade, ddc_indist
from gradia.calculi.ddc.pts import coc, load_pts, load_pts_file, resolve_pts, type_in_type
from gradia.calculi.ddc.schemas import DdcConfig, PtsSignature
from gradia.calculi.ddc.semantics import DdcStepper, ddc_step, evaluate, whnf

__all__ = [
    "DdcChecker",
    "DdcConfig",
    "DdcStepper",
    "PtsSignature",
    "coc",
    "ddc_check",
    "ddc_grade",
    "ddc_indist",
    "ddc_step",
    "erase",
    "evaluate",
    "load_pts",
    "load_pts_file",
    "resolve_pts",
    "type_in_type",
    "whnf",
]
