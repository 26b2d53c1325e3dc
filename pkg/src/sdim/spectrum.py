"""Spectra with multiplicities, partial traces and the summability exponent.

A :class:`SpectrumModel` lists the distinct nonzero eigenvalue magnitudes
``E_m`` of ``|D|`` with multiplicities ``delta_m``.  Everything downstream
works with ``log E_m`` and ``log delta_m`` so that geometric eigenvalues
(``q^{-k}``) and exponential multiplicities (``n^k``) never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

DEFAULT_TAU = 0.05
DEFAULT_RESOLUTION = 0.1
DEFAULT_P_MIN = 0.05
DEFAULT_P_MAX = 40.0
DEFAULT_CUTOFF = 400
MIN_TERMS = 16
MIN_FIT_POINTS = 8


class EstimationError(RuntimeError):
    """Raised when no probe gives a definite verdict."""

    def __init__(self, message: str, diagnostics: dict):
        super().__init__(message)
        self.diagnostics = diagnostics


@dataclass(frozen=True, eq=False)
class SpectrumModel:
    """Eigenvalue magnitudes and multiplicities indexed by an integer label.

    ``term(m)`` returns ``(log E_m, delta_m)`` for labels ``m >= first``.
    ``spacing`` is set when ``E_m = spacing * m`` (integer-spaced spectra);
    the growth-fit estimator only applies to those.
    """

    label: str
    term: Callable[[int], tuple[float, int]]
    first: int = 1
    spacing: float | None = None
    expected_sdim: float | None = None
    default_cutoff: int = DEFAULT_CUTOFF
    notes: tuple[str, ...] = ()
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def log_eigenvalue(self, m: int) -> float:
        return self._term(m)[0]

    def eigenvalue(self, m: int) -> float:
        try:
            return math.exp(self.log_eigenvalue(m))
        except OverflowError:
            return math.inf

    def multiplicity(self, m: int) -> int:
        return self._term(m)[1]

    def _term(self, m: int) -> tuple[float, int]:
        if m < self.first:
            raise IndexError(f"label {m} below first label {self.first}")
        try:
            return self._cache[m]
        except KeyError:
            value = self.term(m)
            self._cache[m] = value
            return value

    def labels(self, cutoff: int) -> np.ndarray:
        return np.arange(self.first, cutoff + 1)

    def log_arrays(self, cutoff: int, start: int | None = None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Labels, ``log E`` and ``log delta`` for ``start <= m <= cutoff``."""
        lo = self.first if start is None else max(start, self.first)
        labels = np.arange(lo, cutoff + 1)
        log_e = np.empty(len(labels))
        log_d = np.empty(len(labels))
        for idx, m in enumerate(labels):
            le, delta = self._term(int(m))
            log_e[idx] = le
            log_d[idx] = math.log(delta)
        return labels, log_e, log_d

    def pairs(self, cutoff: int) -> list[tuple[float, int]]:
        return [(self.eigenvalue(m), self.multiplicity(m)) for m in range(self.first, cutoff + 1)]


def model_from_functions(
    label: str,
    eigenvalue: Callable[[int], float],
    multiplicity: Callable[[int], int],
    first: int = 1,
    spacing: float | None = None,
    **kwargs,
) -> SpectrumModel:
    def term(m):
        return math.log(eigenvalue(m)), multiplicity(m)

    return SpectrumModel(label, term, first=first, spacing=spacing, **kwargs)


def power_law_model(s: float, label: str | None = None) -> SpectrumModel:
    """``E_m = m``, ``delta_m = m^s`` (s a natural number)."""
    s_int = int(s)
    return SpectrumModel(
        label or f"power-law s={s_int}",
        lambda m: (math.log(m), m**s_int),
        spacing=1.0,
        expected_sdim=s_int + 1,
    )


def geometric_model(ratio: float = 2.0) -> SpectrumModel:
    """``E_m = ratio^m``, ``delta_m = 1``."""
    lr = math.log(ratio)
    return SpectrumModel(f"geometric ratio={ratio}", lambda m: (m * lr, 1), first=0, expected_sdim=0.0)


def exponential_model(base: int = 2) -> SpectrumModel:
    """``E_m = m``, ``delta_m = base^m``."""
    return SpectrumModel(
        f"exponential base={base}", lambda m: (math.log(m), base**m), spacing=1.0, expected_sdim=math.inf
    )


def model_from_pairs(label: str, pairs, **kwargs) -> SpectrumModel:
    """Finite model from ``(E, delta)`` pairs; equal magnitudes are merged."""
    merged: dict[float, int] = {}
    for e, delta in pairs:
        e = abs(float(e))
        if e == 0.0 or delta == 0:
            continue
        merged[e] = merged.get(e, 0) + int(delta)
    ordered = sorted(merged.items())
    if not ordered:
        raise ValueError("model has no nonzero eigenvalues")
    table = [(math.log(e), d) for e, d in ordered]

    def term(m):
        return table[m - 1]

    return SpectrumModel(label, term, first=1, default_cutoff=len(table), **kwargs)


# --- traces and convergence ---------------------------------------------


def partial_trace(model: SpectrumModel, p: float, M: int) -> float:
    """``sum_{m <= M} delta_m E_m^{-p}``, exactly rounded (``math.fsum``)."""
    if p <= 0:
        raise ValueError("p must be positive")
    if M < model.first:
        raise ValueError(f"cutoff must be at least {model.first}")
    _, log_e, log_d = model.log_arrays(M)
    log_t = log_d - p * log_e
    if np.any(log_t > 709.0):
        return math.inf
    return math.fsum(np.exp(log_t).tolist())


def partial_traces(model: SpectrumModel, p: float, cutoffs) -> list[float]:
    """Partial traces at several cutoffs from one pass over the terms."""
    cutoffs = sorted(cutoffs)
    _, log_e, log_d = model.log_arrays(cutoffs[-1])
    terms = np.exp(np.minimum(log_d - p * log_e, 709.0)).tolist()
    out = []
    for M in cutoffs:
        out.append(math.fsum(terms[: M - model.first + 1]))
    return out


@dataclass(frozen=True)
class ConvergenceVerdict:
    verdict: str  # "convergent" | "divergent" | "indeterminate"
    tail_ratio: float
    rule: str = "ratio"
    statistic: float | None = None

    @property
    def convergent(self) -> bool:
        return self.verdict == "convergent"

    @property
    def divergent(self) -> bool:
        return self.verdict == "divergent"


def _decide(value: float, threshold: float, tau: float, above: str, below: str) -> str:
    if value > threshold + tau:
        return above
    if value < threshold - tau:
        return below
    return "indeterminate"


def classify(model: SpectrumModel, p: float, M: int, tau: float = DEFAULT_TAU) -> ConvergenceVerdict:
    """Decide whether ``Tr |D|^{-p}`` converges from the first ``M`` labels.

    First the mean term ratio over the last quartile (ratio test).  When
    that is within ``tau`` of 1: for integer-spaced spectra, compare ``p``
    with ``slope + 1`` from a log-log fit of the multiplicities over the
    last half; otherwise use Raabe's statistic ``n (t_n / t_{n+1} - 1)``
    against 1.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    labels, log_e, log_d = model.log_arrays(M)
    count = len(labels)
    if count < MIN_TERMS:
        raise ValueError(f"need at least {MIN_TERMS} terms, got {count}")
    log_t = log_d - p * log_e
    step = np.diff(log_t)  # log(t_{m+1} / t_m)
    tail = step[-max(count // 4, 1):]
    with np.errstate(over="ignore"):
        rho = float(np.mean(np.exp(tail)))
    if rho > 1 + tau:
        return ConvergenceVerdict("divergent", rho)
    if rho < 1 - tau:
        return ConvergenceVerdict("convergent", rho)

    if model.spacing is not None:
        half = labels[count // 2]
        slope, _ = growth_exponent(model, (int(half), int(labels[-1])))
        verdict = _decide(p, slope + 1, tau, "convergent", "divergent")
        return ConvergenceVerdict(verdict, rho, "growth-slope", slope + 1)

    ordinal = np.arange(1, count)[-len(tail):].astype(float)
    with np.errstate(over="ignore"):
        raabe = float(np.mean(ordinal * np.expm1(-tail)))
    verdict = _decide(raabe, 1.0, tau, "convergent", "divergent")
    return ConvergenceVerdict(verdict, rho, "raabe", raabe)


def growth_exponent(
    model: SpectrumModel, window: tuple[int, int], corrected: bool = True
) -> tuple[float, float]:
    """Least-squares slope of ``log delta`` against ``log E`` on a window.

    With ``corrected`` the regression carries an extra ``1/E`` column, which
    absorbs the leading finite-size term of polynomial multiplicities such
    as ``(n + c)^s``; it is exact whenever ``delta`` is a pure power of
    ``E``.  Returns ``(slope, rms residual)``.
    """
    lo, hi = window
    labels, log_e, log_d = model.log_arrays(hi, start=lo)
    if len(labels) < MIN_FIT_POINTS:
        raise ValueError(f"fit window needs at least {MIN_FIT_POINTS} points")
    cols = [log_e, np.ones_like(log_e)]
    if corrected:
        cols.append(np.exp(-log_e))
    A = np.column_stack(cols)
    # column scaling keeps the least-squares problem well conditioned
    scale = np.maximum(np.abs(A).max(axis=0), 1e-300)
    coef, *_ = np.linalg.lstsq(A / scale, log_d, rcond=None)
    coef = coef / scale
    resid = log_d - A @ coef
    return float(coef[0]), float(np.sqrt(np.mean(resid**2)))


@dataclass(frozen=True)
class SdimEstimate:
    value: float  # math.inf for the infinity marker
    method: str
    uncertainty: float
    diagnostics: dict = field(default_factory=dict)

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.value)

    def as_json_value(self):
        return "infinity" if self.is_infinite else self.value


def estimate_sdim(
    model: SpectrumModel,
    method: str = "fit",
    p_min: float = DEFAULT_P_MIN,
    p_max: float = DEFAULT_P_MAX,
    resolution: float = DEFAULT_RESOLUTION,
    cutoff: int | None = None,
    tau: float = DEFAULT_TAU,
) -> SdimEstimate:
    """Infimum of ``p`` for which ``Tr |D|^{-p}`` converges.

    ``method="fit"`` returns ``slope + 1`` from :func:`growth_exponent` for
    integer-spaced spectra (falling back to the scan otherwise);
    ``method="scan"`` bisects on the verdict of :func:`classify`.  Both first
    probe ``p_max`` (divergent there means infinity) and ``p_min``
    (convergent there means 0).
    """
    if method not in ("fit", "scan"):
        raise ValueError(f"unknown method {method!r}")
    if not (0 < p_min < p_max) or resolution <= 0:
        raise ValueError("need 0 < p_min < p_max and resolution > 0")
    cutoff = model.default_cutoff if cutoff is None else cutoff
    diag: dict = {"cutoff": cutoff, "p_min": p_min, "p_max": p_max, "tau": tau}

    top = classify(model, p_max, cutoff, tau)
    diag["verdict_p_max"] = top.verdict
    if top.divergent:
        return SdimEstimate(math.inf, method, 0.0, diag)
    bottom = classify(model, p_min, cutoff, tau)
    diag["verdict_p_min"] = bottom.verdict
    if bottom.convergent:
        return SdimEstimate(0.0, method, p_min, diag)

    if method == "fit" and model.spacing is not None:
        return _fit_estimate(model, cutoff, diag)
    if method == "fit":
        diag["note"] = "eigenvalues not integer-spaced; used p-scan"
    return _scan_estimate(model, cutoff, p_min, p_max, resolution, tau, diag, bottom, top)


def _fit_estimate(model: SpectrumModel, cutoff: int, diag: dict) -> SdimEstimate:
    lo = max(model.first, cutoff // 2)
    slope, resid = growth_exponent(model, (lo, cutoff))
    mid = (lo + cutoff) // 2
    s1, _ = growth_exponent(model, (lo, mid))
    s2, _ = growth_exponent(model, (mid, cutoff))
    diag.update(window=[lo, cutoff], slope=slope, residual=resid, half_window_slopes=[s1, s2])
    return SdimEstimate(slope + 1.0, "fit", abs(s2 - s1), diag)


def _scan_estimate(model, cutoff, p_min, p_max, resolution, tau, diag, bottom, top) -> SdimEstimate:
    probes: dict[float, str] = {p_min: bottom.verdict, p_max: top.verdict}

    @lru_cache(maxsize=None)
    def verdict(p: float) -> str:
        v = classify(model, p, cutoff, tau).verdict
        probes[p] = v
        return v

    # largest p still divergent, and smallest p already convergent
    def boundary(pred, lo, hi):
        while hi - lo > resolution / 2:
            mid = 0.5 * (lo + hi)
            if pred(mid):
                lo = mid
            else:
                hi = mid
        return lo, hi

    if bottom.divergent:
        d_lo, d_hi = boundary(lambda p: verdict(p) == "divergent", p_min, p_max)
    else:
        d_lo = d_hi = p_min
    if top.convergent:
        c_lo, c_hi = boundary(lambda p: verdict(p) != "convergent", d_lo, p_max)
    else:
        c_lo = c_hi = p_max
    diag["probes"] = {f"{p:.6g}": v for p, v in sorted(probes.items())}
    if all(v == "indeterminate" for v in probes.values()):
        raise EstimationError("every probe was indeterminate", diag)
    lower, upper = d_hi, c_lo
    if upper < lower:
        lower, upper = upper, lower
    diag["interval"] = [lower, upper]
    value = 0.5 * (lower + upper)
    return SdimEstimate(value, "scan", 0.5 * (upper - lower) + 0.5 * resolution, diag)
