"""SU_q(l+1) acting on itself, odd quantum spheres and the Podles sphere.

All three spaces are built on GT tableaux.  For the group and the odd
spheres the equivariant Dirac operator is diagonal with eigenvalue given by
the top-left entry of the left tableau, so the spectrum is a pure counting
problem.  For the Podles sphere the generators act by explicit three-term
formulas on the basis ``e_{r^{kk} r^{2k-m,m}}``, indexed here by ``(k, m)``
with ``0 <= m <= 2k``.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from . import _linalg
from .gt import GTTableau, YoungTableau, enumerate_young, gt_count
from .moves import BoundCertificate, bounded_commutator_check
from .spectrum import SpectrumModel


def weyl_dim(lam: YoungTableau | Sequence[int]) -> int:
    """``prod_{i<j} (l_i - l_j + j - i) / (j - i)`` in exact integers."""
    lam = tuple(lam)
    num = den = 1
    for i in range(len(lam)):
        for j in range(i + 1, len(lam)):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    q, r = divmod(num, den)
    assert r == 0
    return q


@lru_cache(maxsize=None)
def delta_group(ell: int, n: int) -> int:
    """Dimension of the ``r_11 = n`` eigenspace on ``L2(SU_q(l+1))``."""
    if ell < 1 or n < 0:
        raise ValueError("need ell >= 1 and n >= 0")
    return sum(weyl_dim(lam) ** 2 for lam in enumerate_young(ell, n))


def _expected_group(ell: int) -> float:
    return float(ell * (ell + 2))


GROUP_CUTOFFS = {1: 200, 2: 100, 3: 60}


def group_spectrum(ell: int) -> SpectrumModel:
    """``E_n = n``, ``delta_n = delta_group(l, n)`` for ``n >= 1``."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    return SpectrumModel(
        f"SU_q({ell + 1})",
        lambda n: (math.log(n), delta_group(ell, n)),
        first=1,
        spacing=1.0,
        expected_sdim=_expected_group(ell),
        default_cutoff=GROUP_CUTOFFS.get(ell, 40),
    )


def dirac_r11_certificate(
    ell: int, cutoff: int, q: float, d: Callable[[GTTableau], float] | None = None
) -> BoundCertificate:
    """Commutator check for ``d(r) = r_11`` (or a supplied ``d``) with ``c = 1``."""
    if d is None:
        d = lambda r: float(r.r11)  # noqa: E731
    return bounded_commutator_check(d, ell, cutoff, 1.0, q)


# --- odd spheres -----------------------------------------------------------


def sphere_top_row(ell: int, n: int, k: int) -> tuple[int, ...]:
    """``lambda_{n,k} = (n + k, k, ..., k, 0)`` with ``l + 1`` entries."""
    return (n + k,) + (k,) * (ell - 1) + (0,)


def sphere_tableau(ell: int, n: int, k: int) -> GTTableau:
    """``r^{nk}``: ``n + k`` at the top left, 0 at the top right, ``k`` elsewhere."""
    if ell < 2:
        raise ValueError("odd spheres need ell >= 2")
    rows = [sphere_top_row(ell, n, k)]
    rows += [(k,) * (ell + 1 - a) for a in range(1, ell + 1)]
    return GTTableau.from_rows(rows)


@lru_cache(maxsize=None)
def delta_sphere(ell: int, n: int) -> int:
    """``sum_{k=0}^{n} |Gamma(n, k, ..., k, 0)|``.

    Block sizes come from the Weyl formula, which agrees with
    :func:`sdim.gt.gt_count` (checked in the test suite).
    """
    if ell < 2:
        raise ValueError("odd spheres need ell >= 2")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum(weyl_dim(sphere_top_row(ell, n - k, k)) for k in range(n + 1))


def delta_sphere_counted(ell: int, n: int) -> int:
    """Same as :func:`delta_sphere` but counting tableaux by interlacing."""
    if ell < 2:
        raise ValueError("odd spheres need ell >= 2")
    return sum(gt_count(sphere_top_row(ell, n - k, k)) for k in range(n + 1))


SPHERE_CUTOFFS = {2: 200, 3: 120}


def sphere_spectrum(ell: int) -> SpectrumModel:
    """``E_n = n``, ``delta_n = delta_sphere(l, n)`` for ``n >= 1``."""
    if ell < 2:
        raise ValueError("odd spheres need ell >= 2")
    return SpectrumModel(
        f"S_q^{2 * ell + 1}",
        lambda n: (math.log(n), delta_sphere(ell, n)),
        first=1,
        spacing=1.0,
        expected_sdim=float(2 * ell + 1),
        default_cutoff=SPHERE_CUTOFFS.get(ell, 80),
    )


# --- Podles sphere -------------------------------------------------------


def _check_q(q: float) -> None:
    if not 0 < q < 1:
        raise ValueError("q must lie in (0, 1)")


def podles_basis(K: int) -> list[tuple[int, int]]:
    """``(k, m)`` for ``k <= K``, ``0 <= m <= 2k``; position ``k^2 + m``."""
    return [(k, m) for k in range(K + 1) for m in range(2 * k + 1)]


def podles_index(k: int, m: int) -> int:
    return k * k + m


def podles_spectrum(q: float) -> SpectrumModel:
    """``E_k = q^{-k}`` with multiplicity ``2k + 1``, ``k >= 0``."""
    _check_q(q)
    lq = -math.log(q)
    return SpectrumModel(
        f"Podles q={q}",
        lambda k: (k * lq, 2 * k + 1),
        first=0,
        expected_sdim=0.0,
        default_cutoff=400,
    )


def _valid(k: int, m: int, K: int) -> bool:
    return 0 <= k <= K and 0 <= m <= 2 * k


def podles_operators(q: float, K: int):
    """Truncations of ``pi(xi)`` and ``pi(eta)`` to ``k <= K`` (CSR matrices).

    Column ``(k, m)`` holds the image of ``e_{(k,m)}``; terms whose target
    lies outside the index range are dropped.
    """
    _check_q(q)
    dim = (K + 1) ** 2
    xi, eta = [], []
    for k, m in podles_basis(K):
        src = podles_index(k, m)
        for (tk, tm), c in (
            ((k - 1, m - 1), -(q ** (k + m - 1))),
            ((k, m), q ** (2 * k) + q ** (2 * m)),
            ((k + 1, m + 1), -(q ** (k + m + 1))),
        ):
            if _valid(tk, tm, K):
                xi.append((podles_index(tk, tm), src, c))
        for (tk, tm), c in (
            ((k - 1, m - 2), -(q**k)),
            ((k, m - 1), q**m * (1 - q ** (2 * k))),
            ((k + 1, m), -(q ** (k + 2 * m + 2))),
        ):
            if _valid(tk, tm, K):
                eta.append((podles_index(tk, tm), src, c))
    return _linalg.build(dim, xi), _linalg.build(dim, eta)


def podles_commutator_norms(
    q: float,
    K: int,
    d: Callable[[int], float],
    cutoffs: Sequence[int] | None = None,
) -> list[tuple[int, float, float]]:
    """``(cutoff, ||[D, xi]||, ||[D, eta]||)`` for truncations ``k <= cutoff``."""
    _check_q(q)
    cutoffs = list(range(1, K + 1)) if cutoffs is None else sorted(cutoffs)
    if cutoffs and cutoffs[-1] > K:
        raise ValueError("cutoffs must not exceed K")
    xi, eta = podles_operators(q, K)
    dvec = np.array([d(k) for k, _ in podles_basis(K)], dtype=float)
    cxi, ceta = _linalg.commutator(xi, dvec), _linalg.commutator(eta, dvec)
    out = []
    for c in cutoffs:
        n = (c + 1) ** 2
        out.append((c, _linalg.operator_norm(cxi[:n, :n]), _linalg.operator_norm(ceta[:n, :n])))
    return out
