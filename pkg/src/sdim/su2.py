"""Classical SU(2) acting on itself: truncated matrices on L2(SU(2)).

Basis vectors ``e^{(n)}_{ij}`` with ``n`` in ``N/2`` and ``i, j`` in
``{-n, ..., n}`` are stored with doubled labels ``(2n, 2i, 2j)`` so that all
index arithmetic is exact.  A truncation at level ``N`` keeps ``n <= N``;
transitions that would leave it are dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _linalg
from .spectrum import SpectrumModel

SU2Dirac = Callable[[float, float], float]  # d(n, i)


@dataclass(frozen=True)
class SU2BasisIndex:
    m: int  # 2n
    a: int  # 2i
    b: int  # 2j

    @property
    def n(self) -> float:
        return self.m / 2

    @property
    def i(self) -> float:
        return self.a / 2

    @property
    def j(self) -> float:
        return self.b / 2


def _doubled(N: float) -> int:
    M = 2 * N
    if M != int(M) or M < 0:
        raise ValueError(f"{N} is not a nonnegative half-integer")
    return int(M)


def su2_basis(N: float) -> list[SU2BasisIndex]:
    """All ``(n, i, j)`` with ``n <= N``, ordered by ``n``, then ``i``, then ``j``."""
    top = _doubled(N)
    return [
        SU2BasisIndex(m, a, b)
        for m in range(top + 1)
        for a in range(-m, m + 1, 2)
        for b in range(-m, m + 1, 2)
    ]


class _Indexer:
    def __init__(self, N: float):
        self.basis = su2_basis(N)
        self.top = _doubled(N)
        self.pos = {(e.m, e.a, e.b): p for p, e in enumerate(self.basis)}

    def __len__(self):
        return len(self.basis)

    def get(self, m, a, b):
        return self.pos.get((m, a, b))


def _coef(num: float, den: float) -> float:
    return math.sqrt(num / den) if den > 0 and num > 0 else 0.0


def a_plus(n: float, i: float, j: float) -> float:
    return _coef((n - j + 1) * (n - i + 1), (2 * n + 1) * (2 * n + 2))


def a_minus(n: float, i: float, j: float) -> float:
    return _coef((n + j) * (n + i), 2 * n * (2 * n + 1))


def b_plus(n: float, i: float, j: float) -> float:
    return -_coef((n - j + 1) * (n + i + 1), (2 * n + 1) * (2 * n + 2))


def b_minus(n: float, i: float, j: float) -> float:
    return _coef((n + j) * (n - i), 2 * n * (2 * n + 1))


def _shift_operator(N: float, di: int, plus, minus):
    """Operator ``e^{(n)}_{ij} -> plus e^{(n+1/2)}_{i+di/2, j-1/2} + minus e^{(n-1/2)}_{...}``."""
    idx = _Indexer(N)
    entries = []
    for src, e in enumerate(idx.basis):
        n, i, j = e.n, e.i, e.j
        for dm, fn in ((1, plus), (-1, minus)):
            tgt = idx.get(e.m + dm, e.a + di, e.b - 1)
            if tgt is None:
                continue
            c = fn(n, i, j)
            if c != 0.0:
                entries.append((tgt, src, c))
    return _linalg.build(len(idx), entries)


def op_alpha(N: float):
    """Truncated ``alpha`` (coefficients ``a_+``, ``a_-``)."""
    return _shift_operator(N, -1, a_plus, a_minus)


def op_beta(N: float):
    """Truncated ``beta`` (coefficients ``b_+``, ``b_-``)."""
    return _shift_operator(N, +1, b_plus, b_minus)


def op_lie(which: str, N: float):
    """``h``, ``e`` or ``f`` acting on the right index ``j`` within each block."""
    idx = _Indexer(N)
    entries = []
    for src, e in enumerate(idx.basis):
        n, j = e.n, e.j
        if which == "h":
            entries.append((src, src, n - 2 * j))
        elif which == "e":
            tgt = idx.get(e.m, e.a, e.b - 2)
            if tgt is not None:
                entries.append((tgt, src, j * (n - 2 * j + 1)))
        elif which == "f":
            tgt = idx.get(e.m, e.a, e.b + 2)
            if tgt is not None:
                entries.append((tgt, src, 1.0))
        else:
            raise ValueError(f"unknown generator {which!r}")
    return _linalg.build(len(idx), entries)


def dirac_vector(d: SU2Dirac, N: float) -> np.ndarray:
    return np.array([d(e.n, e.i) for e in su2_basis(N)], dtype=float)


def su2_commutator(d: SU2Dirac, which: str, N: float):
    ops = {"alpha": op_alpha, "beta": op_beta, "h": lambda N: op_lie("h", N),
           "e": lambda N: op_lie("e", N), "f": lambda N: op_lie("f", N)}
    if which not in ops:
        raise ValueError(f"unknown operator {which!r}")
    return _linalg.commutator(ops[which](N), dirac_vector(d, N))


def su2_commutator_norm(d: SU2Dirac, which: str, N: float) -> float:
    """``||[D, alpha]||`` or ``||[D, beta]||`` on the level-``N`` truncation."""
    if which not in ("alpha", "beta"):
        raise ValueError("which must be 'alpha' or 'beta'")
    return _linalg.operator_norm(su2_commutator(d, which, N))


def unitarity_residue(N: float) -> float:
    """Max deviation of ``alpha* alpha + beta* beta`` from ``I`` on vectors with ``n <= N - 1/2``."""
    A, B = op_alpha(N), op_beta(N)
    G = (A.T @ A + B.T @ B).toarray()
    interior = [p for p, e in enumerate(su2_basis(N)) if e.m <= _doubled(N) - 1]
    sub = G[:, interior]
    target = np.zeros_like(sub)
    target[interior, np.arange(len(interior))] = 1.0
    return float(np.abs(sub - target).max())


class GrowthHypothesisError(ValueError):
    """A difference condition failed; ``witness`` names the offending step."""

    def __init__(self, condition: str, witness: tuple, value: float, bound: float):
        super().__init__(f"{condition} violated at {witness}: {value:.6g} > {bound:.6g}")
        self.condition = condition
        self.witness = witness
        self.value = value
        self.bound = bound


def su2_growth_bound(d: SU2Dirac, N: float, C: float) -> bool:
    """Check the difference conditions with constant ``C`` and the linear bound.

    Hypotheses, for ``n + 1/2 <= N``:

    * ``|d(n+1/2, i+1/2) - d(n, i)| <= C sqrt((2n+2)/(n+i+1))`` and its mirror
      ``|d(n+1/2, i-1/2) - d(n, i)| <= C sqrt((2n+2)/(n-i+1))``;
    * ``<= C`` without the square root on ``i >= 0`` (resp. ``i <= 0``);
    * ``|d(n+1, 0) - d(n, 0)| <= C`` along the spine.

    The conclusion ``|d(n, i)| <= 2Cn + |d(0, 0)|`` is then verified by
    walking each ``(n, i)`` back to ``(n - |i|, 0)`` diagonally and down the
    spine to the origin, accumulating the step sizes.  Raises
    :class:`GrowthHypothesisError` on the first failed condition.
    """
    top = _doubled(N)
    tol = 1e-12 * max(1.0, C)
    for m in range(top):
        n = m / 2
        for a in range(-m, m + 1, 2):
            i = a / 2
            here = d(n, i)
            up = d(n + 0.5, i + 0.5) - here
            down = d(n + 0.5, i - 0.5) - here
            for name, diff, w in (("cbdd1", up, n + i + 1), ("cbdd2", down, n - i + 1)):
                bound = C * math.sqrt((2 * n + 2) / w)
                if abs(diff) > bound + tol:
                    raise GrowthHypothesisError(name, (n, i), abs(diff), bound)
            if i >= 0 and abs(up) > C + tol:
                raise GrowthHypothesisError("cbdd3", (n, i), abs(up), C)
            if i <= 0 and abs(down) > C + tol:
                raise GrowthHypothesisError("cbdd4", (n, i), abs(down), C)
    for m in range(0, top - 1, 2):
        n = m / 2
        diff = abs(d(n + 1, 0.0) - d(n, 0.0))
        if diff > C + tol:
            raise GrowthHypothesisError("cbdd5", (n, 0.0), diff, C)

    origin = abs(d(0.0, 0.0))
    for m in range(top + 1):
        n = m / 2
        for a in range(-m, m + 1, 2):
            i = a / 2
            walked = _chain_length(d, m, a)
            value = abs(d(n, i))
            if value > origin + walked + tol or walked > 2 * C * n + tol:
                raise GrowthHypothesisError("bndgenericdq1", (n, i), value, 2 * C * n + origin)
    return True


def _chain_length(d: SU2Dirac, m: int, a: int) -> float:
    """Sum of ``|step|`` along the path ``(n, i) -> (n - |i|, 0) -> (0, 0)``."""
    total = 0.0
    step = -1 if a > 0 else 1
    while a != 0:
        prev = (m - 1, a + step)
        total += abs(d(m / 2, a / 2) - d(prev[0] / 2, prev[1] / 2))
        m, a = prev
    while m > 0:
        total += abs(d(m / 2, 0.0) - d(m / 2 - 1, 0.0))
        m -= 2
    return total


def su2_spectrum() -> SpectrumModel:
    """``d(n, i) = n``: eigenvalue ``n = m/2`` with multiplicity ``(m+1)^2``, ``m >= 1``."""
    return SpectrumModel(
        "SU(2)",
        lambda m: (math.log(m / 2), (m + 1) ** 2),
        first=1,
        spacing=0.5,
        expected_sdim=3.0,
        default_cutoff=400,
    )
