"""Exact computations with power operations in truncated Morava E-theory.

Submodules: ``padic`` (p-adic digits, Hensel lifting, Rezk logarithm),
``rings`` (truncated coefficient rings and E0[z]/f), ``powerops`` (the total
power operation and transfer), ``derive`` (relation saturation) and ``cli``.
"""
from .howell import BACKEND
from .padic import PAdicInt, hensel_unit_root, rezk_log, theta, val
from .rings import (
    CoeffElem,
    CoeffRingSpec,
    ETheoryPresentation,
    SigmaElem,
    load_presentation,
    reduce_z_power,
    window_matrix,
)

__all__ = [
    "BACKEND",
    "CoeffElem",
    "CoeffRingSpec",
    "ETheoryPresentation",
    "PAdicInt",
    "SigmaElem",
    "hensel_unit_root",
    "load_presentation",
    "reduce_z_power",
    "rezk_log",
    "theta",
    "val",
    "window_matrix",
]
