"""Noncommutative n-torus under the gauge action of T^n.

The GNS space has orthonormal basis ``U^k``, ``k`` in ``Z^n``, and an
equivariant Dirac operator is a multiplier ``d(k)``.  Its commutators with
the generators are bounded iff unit steps of ``d`` are bounded, and the
canonical choice ``d(k) = |k|_1`` has shells of size :func:`shell_count`.
The deformation matrix never enters these counts.
"""

from __future__ import annotations

import itertools
import math
from typing import Callable, Sequence

import numpy as np

from .moves import BoundCertificate, _certificate
from .spectrum import SpectrumModel


def shell_count(n: int, m: int) -> int:
    """``#{k in Z^n : |k|_1 = m}`` via ``sum_j 2^j C(n, j) C(m-1, j-1)``."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    if m == 0:
        return 1
    return sum(2**j * math.comb(n, j) * math.comb(m - 1, j - 1) for j in range(1, min(n, m) + 1))


def shell_count_bruteforce(n: int, m: int) -> int:
    return sum(1 for k in itertools.product(range(-m, m + 1), repeat=n) if sum(map(abs, k)) == m)


def l1_norm(k: Sequence[int]) -> int:
    return int(sum(abs(x) for x in k))


def torus_boundedness_check(
    d: Callable[[tuple[int, ...]], float], n: int, box: int, C: float
) -> BoundCertificate:
    """``max |d(k + e_j) - d(k)|`` over ``k`` in ``[-box, box]^n`` (strict ``< C``)."""
    if n < 1 or box < 0 or C <= 0:
        raise ValueError("need n >= 1, box >= 0, C > 0")
    best, witness, checked = 0.0, None, 0
    for k in itertools.product(range(-box, box + 1), repeat=n):
        here = d(k)
        for j in range(n):
            nxt = list(k)
            nxt[j] += 1
            value = abs(d(tuple(nxt)) - here)
            checked += 1
            if value > best:
                best, witness = value, (k, j)
    region = {"n": n, "box": box}
    return _certificate(region, C, best, witness, checked, strict=True)


def torus_spectrum(n: int, theta: np.ndarray | None = None) -> SpectrumModel:
    """``E_m = m``, ``delta_m = shell_count(n, m)`` for ``m >= 1``.

    ``theta`` is accepted for completeness; phases do not change multiplicities.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    notes = ("theta ignored: multiplicities do not depend on the deformation",)
    if theta is not None:
        theta = np.asarray(theta, dtype=float)
        if theta.shape != (n, n) or not np.allclose(theta, -theta.T):
            raise ValueError("theta must be a skew-symmetric n x n matrix")
    return SpectrumModel(
        f"A_theta n={n}",
        lambda m: (math.log(m), shell_count(n, m)),
        first=1,
        spacing=1.0,
        expected_sdim=float(n),
        default_cutoff=400,
        notes=notes,
    )
