"""Cuntz algebra O_n under the ergodic action of A_u(Q).

Spectral subspaces are labelled by pairs of multi-indices ``(alpha, beta)``
and an equivariant Dirac operator by ``d(l(alpha), l(beta))``.  Bounded
commutators force ``|d(a, b)| <= |d(0, 0)| + M (a + b)`` while the
eigenvalue ``k`` carries at least ``n^k`` dimensions, so no trace
``Tr |D|^{-p}`` is finite.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable

import numpy as np
from scipy.special import logsumexp

from .spectrum import DEFAULT_TAU, ConvergenceVerdict, SpectrumModel

CuntzGrid = Callable[[int, int], float]


class CuntzHypothesisError(ValueError):
    def __init__(self, condition: str, witness: tuple, value: float, bound: float):
        super().__init__(f"{condition} violated at {witness}: {value:.6g} >= {bound:.6g}")
        self.condition = condition
        self.witness = witness
        self.value = value
        self.bound = bound


def cuntz_growth_check(d: CuntzGrid, M: float, K: int) -> bool:
    """Check the unit-step conditions with constant ``M`` and the chained bound.

    Conditions: ``|d(a+1, b) - d(a, b)| < M`` for ``a + b < K`` and
    ``|d(0, b+1) - d(0, b)| < M`` for ``b < K``.  Chaining along
    ``(0,0) -> (0,b) -> (a,b)`` then gives ``|d(a, b)| <= |d(0,0)| + M(a+b)``,
    which is verified on ``a + b <= K``.
    """
    if M <= 0 or K < 0:
        raise ValueError("need M > 0 and K >= 0")
    for s in range(K):
        for a in range(s + 1):
            b = s - a
            diff = abs(d(a + 1, b) - d(a, b))
            if diff >= M:
                raise CuntzHypothesisError("cuntz1", (a, b), diff, M)
    for b in range(K):
        diff = abs(d(0, b + 1) - d(0, b))
        if diff >= M:
            raise CuntzHypothesisError("cuntz2", (0, b), diff, M)
    origin = abs(d(0, 0))
    for s in range(K + 1):
        for a in range(s + 1):
            value = abs(d(a, s - a))
            if value > origin + M * s + 1e-12 * max(1.0, M * s):
                raise CuntzHypothesisError("chain", (a, s - a), value, origin + M * s)
    return True


def cuntz_spectrum(n: int, Q: np.ndarray | None = None) -> SpectrumModel:
    """``E_k = k`` with multiplicity ``n^k``, ``k >= 1``.

    ``n^k`` is a lower bound for the number of pairs with total length ``k``
    (that number is ``(k+1) n^k``); the lower bound already forces divergence.
    ``Q`` is accepted and ignored.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if Q is not None:
        Q = np.asarray(Q, dtype=float)
        if Q.shape != (n, n):
            raise ValueError("Q must be n x n")
    return SpectrumModel(
        f"O_{n}",
        lambda k: (math.log(k), n**k),
        first=1,
        spacing=1.0,
        expected_sdim=math.inf,
        default_cutoff=400,
        notes=("multiplicity n^k; exact pair count is (k+1) n^k", "Q ignored"),
    )


def cuntz_shell_log_traces(d: CuntzGrid, n: int, p: float, K: int) -> np.ndarray:
    """``log sum_{a+b=s} n^s |d(a,b)|^{-p}`` for ``s = 1..K`` (zeros skipped)."""
    out = np.full(K, -np.inf)
    for s in range(1, K + 1):
        logs = [s * math.log(n) - p * math.log(abs(d(a, s - a)))
                for a in range(s + 1) if d(a, s - a) != 0]
        if logs:
            out[s - 1] = logsumexp(logs)
    return out


def cuntz_grid_verdicts(
    d: CuntzGrid, n: int, ps: Iterable[float], K: int = 120, tau: float = DEFAULT_TAU
) -> dict[float, ConvergenceVerdict]:
    """Ratio test on successive shell contributions of ``Tr |D|^{-p}``."""
    out = {}
    for p in ps:
        logs = cuntz_shell_log_traces(d, n, p, K)
        tail = np.diff(logs)[-max(K // 4, 1):]
        rho = float(np.mean(np.exp(np.minimum(tail, 700.0))))
        if rho > 1 + tau:
            verdict = "divergent"
        elif rho < 1 - tau:
            verdict = "convergent"
        else:
            verdict = "indeterminate"
        out[p] = ConvergenceVerdict(verdict, rho)
    return out
