"""Translations between the calculi."""

from gradia.translate.embedding import lift_context, sdc_to_ddct
from gradia.translate.icc import (
    IccApp,
    IccLam,
    IccPi,
    ddc_to_icc,
    icc_normalize,
    icc_reachable,
    icc_reducts,
    icc_star_erase,
    icc_step,
    print_icc,
)
from gradia.translate.sealing import seal_context, seal_to_sdc

__all__ = [
    "IccApp",
    "IccLam",
    "IccPi",
    "ddc_to_icc",
    "icc_normalize",
    "icc_reachable",
    "icc_reducts",
    "icc_star_erase",
    "icc_step",
    "lift_context",
    "print_icc",
    "sdc_to_ddct",
    "seal_context",
    "seal_to_sdc",
]
