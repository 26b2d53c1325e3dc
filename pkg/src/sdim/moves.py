"""Moves on GT tableaux, q-exponents, free planes and sweepout paths.

A move ``M = (m_1, ..., m_k)`` with ``1 <= m_j <= l + 2 - j`` raises the
entries ``r_{j, m_j}`` (j = 1..k) by one.  Left multiplication by the
fundamental matrix entry ``u_{ij}`` sends ``e_{r s}`` to a combination of
``e_{M(r) N(s)}`` whose leading coefficient is
``sign(M) sign(N) q^{C(i,r,M) + C(j,s,N) + A(M) + K(M) + B(N)}``; the
functions below compute those integer exponents exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .gt import GTTableau, coord_H, coord_V, is_valid_rows, truncation


@dataclass(frozen=True)
class Move:
    entries: tuple[int, ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("a move has length at least 1")

    @property
    def k(self) -> int:
        return len(self.entries)

    def is_valid(self, ell: int) -> bool:
        return self.k <= ell + 1 and all(
            1 <= m <= ell + 2 - j for j, m in enumerate(self.entries, start=1)
        )

    def check(self, ell: int) -> "Move":
        if not self.is_valid(ell):
            raise ValueError(f"{self.entries} is not in M_{self.k} for l={ell}")
        return self

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return "(" + ",".join(map(str, self.entries)) + ")"


def move(*entries: int) -> Move:
    return Move(tuple(entries))


def all_moves(ell: int, k: int) -> list[Move]:
    """Every element of ``M_k`` for rank ``ell``."""
    if not 1 <= k <= ell + 1:
        raise ValueError(f"k must lie in 1..{ell + 1}")
    ranges = [range(1, ell + 3 - j) for j in range(1, k + 1)]
    return [Move(t) for t in itertools.product(*ranges)]


def apply_move(M: Move, r: GTTableau) -> GTTableau | None:
    """``M(r)``, or ``None`` when the raised array fails to interlace."""
    M.check(r.ell)
    rows = [list(row) for row in r.rows]
    for j, m in enumerate(M.entries):
        rows[j][m - 1] += 1
    if not is_valid_rows(rows):
        return None
    return GTTableau(tuple(tuple(row) for row in rows))


def _sign(p: int) -> int:
    return 1 if p >= 0 else -1


def sign_of(M: Move) -> int:
    m = M.entries
    return math.prod(_sign(m[a + 1] - m[a]) for a in range(len(m) - 1))


def exp_A(M: Move) -> int:
    m = M.entries
    jumps = sum(abs(m[j] - m[j + 1]) for j in range(len(m) - 1))
    descents = sum(1 for j in range(len(m) - 1) if m[j] > m[j + 1])
    return jumps - descents


def exp_K(M: Move, ell: int) -> int:
    return ell + 2 - M.k - M.entries[-1]


def exp_B(M: Move) -> int:
    return exp_A(M) + M.entries[0] - M.entries[-1]


def exp_C(i: int, r: GTTableau, M: Move) -> int:
    """Tableau-dependent exponent ``C(i, r, M)`` for ``M`` in ``M_i``."""
    ell = r.ell
    if M.k != i:
        raise ValueError(f"move {M} has length {M.k}, expected {i}")
    M.check(ell)
    m = M.entries
    total = 0
    for a in range(1, i):
        lo, hi = min(m[a - 1], m[a]), max(m[a - 1], m[a])
        total += sum(coord_H(r, a, b) for b in range(lo, hi))
        total += 2 * sum(coord_V(r, a, b) for b in range(m[a] + 1, m[a - 1]))
    total += sum(coord_H(r, i, b) for b in range(m[i - 1], ell + 2 - i))
    return total


def total_exponent(i: int, r: GTTableau, M: Move, j: int, s: GTTableau, N: Move) -> int:
    """Exponent of q in the coefficient of ``e_{M(r) N(s)}`` in ``u_ij e_{rs}``."""
    if M.entries[0] != N.entries[0]:
        raise ValueError("moves must agree in their first entry")
    ell = r.ell
    return exp_C(i, r, M) + exp_C(j, s, N) + exp_A(M) + exp_K(M, ell) + exp_B(N)


def std_move_M(i: int, k: int, ell: int | None = None) -> Move:
    """``M_{ik} = (i, i-1, ..., i-k+1)``."""
    if not 1 <= k <= i:
        raise ValueError(f"M_{{{i},{k}}} needs 1 <= k <= i")
    M = Move(tuple(range(i, i - k, -1)))
    return M.check(ell) if ell is not None else M


def std_move_N(i: int, k: int, ell: int) -> Move:
    """``N_{ik}``: ``i+1`` repeated ``k`` times, then ``i``, length ``l+2-i``."""
    length = ell + 2 - i
    if not (1 <= i <= ell + 1 and 0 <= k <= ell + 1 - i):
        raise ValueError(f"N_{{{i},{k}}} undefined for l={ell}")
    return Move((i + 1,) * k + (i,) * (length - k)).check(ell)


# --- free planes ---------------------------------------------------------


def same_free_plane(r: GTTableau, s: GTTableau) -> bool:
    """Coordinate test for ``s`` lying on the free plane through ``r``."""
    ell = r.ell
    if s.ell != ell:
        raise ValueError("tableaux of different rank")
    if any(coord_V(r, a, 1) != coord_V(s, a, 1) for a in range(1, ell + 1)):
        return False
    for b in range(1, ell + 1):
        diffs = {coord_H(r, a, b) - coord_H(s, a, b) for a in range(1, ell + 2 - b)}
        if len(diffs) > 1:
            return False
    return True


def min_rows(r: GTTableau) -> list[int]:
    """``a_j`` for j = 1..l: smallest row index minimizing ``H_{a,j}``."""
    ell = r.ell
    out = []
    for j in range(1, ell + 1):
        col = [coord_H(r, a, j) for a in range(1, ell + 2 - j)]
        out.append(col.index(min(col)) + 1)
    return out


def axis_member(r: GTTableau) -> bool:
    ell = r.ell
    return all(
        math.prod(coord_H(r, a, b) for a in range(1, ell + 2 - b)) == 0
        for b in range(1, ell + 1)
    )


# --- paths ---------------------------------------------------------------


@dataclass(frozen=True)
class Path:
    tableaux: tuple[GTTableau, ...]
    moves: tuple[Move, ...] = field(default=())

    def __post_init__(self):
        if len(self.tableaux) != len(self.moves) + 1:
            raise ValueError("a path has one more tableau than moves")

    @property
    def start(self) -> GTTableau:
        return self.tableaux[0]

    @property
    def end(self) -> GTTableau:
        return self.tableaux[-1]

    def __len__(self) -> int:
        return len(self.moves)

    def schedule(self) -> list[tuple[Move, int]]:
        """Run-length encoding of the applied moves."""
        out: list[tuple[Move, int]] = []
        for M in self.moves:
            if out and out[-1][0] == M:
                out[-1] = (M, out[-1][1] + 1)
            else:
                out.append((M, 1))
        return out

    def is_consistent(self) -> bool:
        return all(
            apply_move(M, a) == b
            for M, a, b in zip(self.moves, self.tableaux, self.tableaux[1:])
        )


class _PathBuilder:
    def __init__(self, start: GTTableau):
        self.tableaux = [start]
        self.moves: list[Move] = []

    @property
    def current(self) -> GTTableau:
        return self.tableaux[-1]

    def power(self, M: Move, times: int) -> None:
        for _ in range(times):
            nxt = apply_move(M, self.current)
            if nxt is None:
                raise RuntimeError(f"move {M} left the set of GT tableaux at\n{self.current}")
            self.tableaux.append(nxt)
            self.moves.append(M)

    def path(self) -> Path:
        return Path(tuple(self.tableaux), tuple(self.moves))


def sweep_to_min_rows(s: GTTableau) -> Path:
    """Path inside the free plane of ``s`` clearing ``H_{a_b, b}`` for ``b > 1``.

    ``H_{11}`` and every ``V_{a1}`` stay fixed.  Applies
    ``N_{3,0}^{c_l}``, then ``N_{4,0}^{c_{l-1}}``, ..., ``N_{l+1,0}^{c_2}`` with
    ``c_b = sum_{j=2}^{l+2-b} H_{a_j, j}(s)``.
    """
    ell = s.ell
    a = min_rows(s)
    h_min = [coord_H(s, a[j - 1], j) for j in range(1, ell + 1)]
    builder = _PathBuilder(s)
    for b in range(ell, 1, -1):
        c_b = sum(h_min[j - 1] for j in range(2, ell + 3 - b))
        builder.power(std_move_N(ell + 3 - b, 0, ell), c_b)
    return builder.path()


def axis_projection(r: GTTableau) -> tuple[GTTableau, Path]:
    """Sweep ``r`` along its free plane onto the complementary axis."""
    ell = r.ell
    a = min_rows(r)
    h_min = [coord_H(r, a[j - 1], j) for j in range(1, ell + 1)]
    builder = _PathBuilder(r)
    for b in range(ell, 0, -1):
        builder.power(std_move_N(ell + 2 - b, 0, ell), sum(h_min[: ell + 1 - b]))
    path = builder.path()
    return path.end, path


def _clear_h(builder: _PathBuilder, r: GTTableau, stages: int) -> None:
    ell = r.ell
    for k in range(1, stages + 1):
        for b in range(ell + 1 - k, 0, -1):
            builder.power(std_move_M(b + k, k, ell), coord_H(r, k, b))


def sweep_clear_first_row(r: GTTableau) -> Path:
    """Clear every ``H_{1,b}`` keeping all ``V_{a1}`` and lower-row H fixed."""
    builder = _PathBuilder(r)
    _clear_h(builder, r, 1)
    return builder.path()


def sweep_to_v11_axis(r: GTTableau) -> Path:
    """Path to the tableau whose only nonzero coordinate is ``V_{11}``.

    Clears the H coordinates row by row with ``M_{b+k,k}`` and then the
    vertical differences below the first row with
    ``M_{33}^{V_21}, M_{44}^{V_21+V_31}, ...``.  ``V_{11}`` is constant
    along the whole path.
    """
    ell = r.ell
    builder = _PathBuilder(r)
    _clear_h(builder, r, ell)
    for a in range(2, ell + 1):
        builder.power(std_move_M(a + 1, a + 1, ell), sum(coord_V(r, c, 1) for c in range(2, a + 1)))
    return builder.path()


def path_to_zero(r: GTTableau) -> Path:
    """Path from ``r`` to a constant tableau (the zero tableau up to shift).

    Same H sweep as :func:`sweep_to_v11_axis`, followed by
    ``M_{22}^{V_11}, M_{33}^{V_11+V_21}, ..., M_{l+1,l+1}^{V_11+...+V_l1}``.
    """
    ell = r.ell
    builder = _PathBuilder(r)
    _clear_h(builder, r, ell)
    for a in range(1, ell + 1):
        builder.power(std_move_M(a + 1, a + 1, ell), sum(coord_V(r, c, 1) for c in range(1, a + 1)))
    return builder.path()


def path_to_zero_length(r: GTTableau) -> int:
    """Closed-form length of :func:`path_to_zero`."""
    ell = r.ell
    h = sum(coord_H(r, a, b) for a in range(1, ell + 1) for b in range(1, ell + 2 - a))
    v = sum(coord_V(r, a, 1) for b in range(1, ell + 1) for a in range(1, b + 1))
    return h + v


# --- boundedness certificates ------------------------------------------


@dataclass(frozen=True)
class BoundCertificate:
    """Outcome of a finite commutator-boundedness check.

    ``passed`` is ``max_value <= bound`` (``<`` when ``strict``).
    """

    region: dict
    bound: float
    max_value: float
    passed: bool
    witness: tuple | None
    checked: int
    strict: bool = False


def _certificate(region, bound, best, witness, checked, strict=False) -> BoundCertificate:
    passed = best < bound if strict else best <= bound
    return BoundCertificate(region, bound, best, passed, witness, checked, strict)


def bounded_commutator_check(
    d: Callable[[GTTableau], float],
    ell: int,
    cutoff: int,
    c: float,
    q: float,
) -> BoundCertificate:
    """Evaluate ``|d(M(r)) - d(r)| q^{C(i,r,M)}`` over a finite truncation.

    ``r`` runs over normalized tableaux with ``r_11 <= cutoff`` and
    ``(i, M)`` over all moves; ``d`` is always evaluated on normalized
    tableaux.  Moves whose target fails to interlace are skipped.
    """
    if not 0 < q < 1:
        raise ValueError("q must lie in (0, 1)")
    moves = [M for i in range(1, ell + 2) for M in all_moves(ell, i)]
    best, witness, checked = 0.0, None, 0
    for r in truncation(ell, cutoff):
        dr = d(r)
        for M in moves:
            s = apply_move(M, r)
            if s is None:
                continue
            C = exp_C(M.k, r, M)
            value = abs(d(s.normalized()) - dr) * q**C
            checked += 1
            if value > best:
                best, witness = value, (M.k, r, M)
    region = {"l": ell, "max_top": cutoff, "q": q}
    return _certificate(region, c, best, witness, checked)


def iter_move_targets(r: GTTableau) -> Iterable[tuple[Move, GTTableau]]:
    ell = r.ell
    for i in range(1, ell + 2):
        for M in all_moves(ell, i):
            s = apply_move(M, r)
            if s is not None:
                yield M, s

