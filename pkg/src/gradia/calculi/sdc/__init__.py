"""The simply typed dependency calculus and its sealing fragment."""

from gradia.calculi.sdc.checker import SdcChecker, SealChecker, sdc_check, seal_check
from gradia.calculi.sdc.indist import sdc_grade, sdc_indist
from gradia.calculi.sdc.semantics import evaluate, full_step, is_value, sdc_step

__all__ = [
    "SdcChecker",
    "SealChecker",
    "evaluate",
    "full_step",
    "is_value",
    "sdc_check",
    "sdc_grade",
    "sdc_indist",
    "sdc_step",
    "seal_check",
]
