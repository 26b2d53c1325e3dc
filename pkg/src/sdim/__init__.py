"""Spectral dimension of homogeneous spaces of compact quantum groups.

Combinatorics of Gelfand-Tsetlin tableaux and moves (:mod:`sdim.gt`,
:mod:`sdim.moves`), a spectrum/summability engine (:mod:`sdim.spectrum`) and
the worked spaces: SU_q(l+1), odd quantum spheres and the Podles sphere
(:mod:`sdim.suq`), classical SU(2) (:mod:`sdim.su2`), the noncommutative
torus (:mod:`sdim.torus`) and Cuntz algebras (:mod:`sdim.cuntz`).
"""

from .gt import GTTableau, YoungTableau, enumerate_gt, enumerate_young, gt_count, make_young
from .spectrum import SdimEstimate, SpectrumModel, classify, estimate_sdim, partial_trace

__all__ = [
    "GTTableau",
    "YoungTableau",
    "SdimEstimate",
    "SpectrumModel",
    "classify",
    "enumerate_gt",
    "enumerate_young",
    "estimate_sdim",
    "gt_count",
    "make_young",
    "partial_trace",
]
