"""Young tableaux and Gelfand-Tsetlin patterns for SU(l+1).

A GT tableau for rank ``l`` is a triangular array ``r[a][b]`` with
``l + 2 - a`` entries in row ``a`` (1-based), interlacing as

    r_{a,b} >= r_{a+1,b} >= r_{a,b+1}.

Rows are stored top first, so ``rows[0]`` is the highest weight.  All
public accessors use the 1-based indices of the mathematical notation.

Difference coordinates::

    H_{ab}(r) = r_{a+1,b} - r_{a,b+1}      (diagonal edges)
    V_{ab}(r) = r_{a,b}   - r_{a+1,b}      (vertical edges)

both defined for ``1 <= a <= l`` and ``1 <= b <= l + 1 - a``.  Interlacing
is exactly the statement that every H and V is nonnegative.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Sequence


@dataclass(frozen=True)
class YoungTableau:
    entries: tuple[int, ...]

    def __post_init__(self):
        e = self.entries
        if len(e) < 2:
            raise ValueError("a Young tableau for SU(l+1) needs at least two entries")
        if any(not isinstance(x, int) or x < 0 for x in e):
            raise ValueError(f"entries must be natural numbers: {e}")
        if any(e[i] < e[i + 1] for i in range(len(e) - 1)):
            raise ValueError(f"entries must be nonincreasing: {e}")
        if e[-1] != 0:
            raise ValueError(f"last entry must be 0: {e}")

    @property
    def ell(self) -> int:
        return len(self.entries) - 1

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


def make_young(entries: Sequence[int]) -> YoungTableau:
    return YoungTableau(tuple(int(x) for x in entries))


def enumerate_young(ell: int, n: int) -> list[YoungTableau]:
    """All ``(n, l_2, ..., l_l, 0)`` with nonincreasing entries, lexicographic."""
    if ell < 1 or n < 0:
        raise ValueError("need ell >= 1 and n >= 0")
    out = []
    # nonincreasing middle parts in [0, n], generated in ascending lex order
    for mid in _nonincreasing(ell - 1, n):
        out.append(YoungTableau((n, *mid, 0)))
    return out


def _nonincreasing(length: int, top: int) -> Iterator[tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    for first in range(top + 1):
        for rest in _nonincreasing(length - 1, first):
            yield (first, *rest)


@dataclass(frozen=True)
class GTTableau:
    """Interlacing triangular array; ``rows[a-1]`` holds ``r_{a,1..l+2-a}``.

    The top row need not end in 0: moves may raise ``r_{1,l+1}``.  Such a
    tableau represents the same basis label as its :meth:`normalized` form
    (every entry shifted down by ``r_{1,l+1}``).
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = self.rows
        L = len(rows)
        if L < 2:
            raise ValueError("a GT tableau needs at least two rows")
        for a, row in enumerate(rows):
            if len(row) != L - a:
                raise ValueError(f"row {a + 1} must have {L - a} entries, got {row}")
            if any(not isinstance(x, int) or x < 0 for x in row):
                raise ValueError(f"entries must be natural numbers: {row}")
        if not _interlaces(rows):
            raise ValueError(f"interlacing violated: {rows}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "GTTableau":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @classmethod
    def zero(cls, ell: int) -> "GTTableau":
        return cls(tuple((0,) * (ell + 1 - a) for a in range(ell + 1)))

    @property
    def ell(self) -> int:
        return len(self.rows) - 1

    @property
    def top(self) -> tuple[int, ...]:
        return self.rows[0]

    @property
    def r11(self) -> int:
        return self.rows[0][0]

    def r(self, a: int, b: int) -> int:
        if not (1 <= a <= self.ell + 1 and 1 <= b <= self.ell + 2 - a):
            raise IndexError(f"r_{{{a},{b}}} out of range for l={self.ell}")
        return self.rows[a - 1][b - 1]

    def H(self, a: int, b: int) -> int:
        return coord_H(self, a, b)

    def V(self, a: int, b: int) -> int:
        return coord_V(self, a, b)

    def normalized(self) -> "GTTableau":
        shift = self.rows[0][-1]
        if shift == 0:
            return self
        return GTTableau(tuple(tuple(x - shift for x in row) for row in self.rows))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.normalized().rows for x in row)

    def __str__(self) -> str:
        width = max(len(str(x)) for row in self.rows for x in row)
        lines = []
        for a, row in enumerate(self.rows):
            pad = " " * (a * (width + 1) // 2)
            lines.append(pad + " ".join(str(x).rjust(width) for x in row))
        return "\n".join(lines)


def _interlaces(rows) -> bool:
    for a in range(len(rows) - 1):
        upper, lower = rows[a], rows[a + 1]
        for b, x in enumerate(lower):
            if not (upper[b] >= x >= upper[b + 1]):
                return False
    return True


def is_valid_rows(rows) -> bool:
    """Shape, sign and interlacing check without raising."""
    L = len(rows)
    if L < 2 or any(len(row) != L - a for a, row in enumerate(rows)):
        return False
    if any(x < 0 for row in rows for x in row):
        return False
    return _interlaces(rows)


def coord_H(r: GTTableau, a: int, b: int) -> int:
    ell = r.ell
    if not (1 <= a <= ell and 1 <= b <= ell + 1 - a):
        raise IndexError(f"H_{{{a},{b}}} out of range for l={ell}")
    return r.rows[a][b - 1] - r.rows[a - 1][b]


def coord_V(r: GTTableau, a: int, b: int) -> int:
    ell = r.ell
    if not (1 <= a <= ell and 1 <= b <= ell + 1 - a):
        raise IndexError(f"V_{{{a},{b}}} out of range for l={ell}")
    return r.rows[a - 1][b - 1] - r.rows[a][b - 1]


def h_indices(ell: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(1, ell + 1) for b in range(1, ell + 2 - a)]


def from_coordinates(
    ell: int,
    v_first: Sequence[int],
    h: Mapping[tuple[int, int], int],
    base: int = 0,
) -> GTTableau:
    """Rebuild a tableau from ``V_{a,1}`` (a = 1..l) and all ``H_{ab}``.

    ``base`` is the bottom entry ``r_{l+1,1}``; it is raised automatically if
    the coordinates would otherwise force a negative entry.  Raises
    ``ValueError`` when the coordinates do not describe an interlacing array.
    """
    if len(v_first) != ell:
        raise ValueError("need exactly l values V_{a,1}")
    rows = [[0] * (ell + 1 - a) for a in range(ell + 1)]
    rows[ell][0] = 0
    for a in range(ell, 0, -1):  # 1-based row a, filled from the row below
        rows[a - 1][0] = rows[a][0] + v_first[a - 1]
        for b in range(1, ell + 2 - a):
            rows[a - 1][b] = rows[a][b - 1] - h.get((a, b), 0)
    low = min(x for row in rows for x in row)
    shift = base - rows[ell][0]
    if low + shift < 0:
        shift = -low
    return GTTableau(tuple(tuple(x + shift for x in row) for row in rows))


def enumerate_gt(lam: YoungTableau | Sequence[int]) -> list[GTTableau]:
    """All GT tableaux with top row ``lam``.

    Row-major order with the smallest admissible entry first, so the output
    is deterministic and sorted lexicographically by rows.
    """
    top = tuple(lam)
    out: list[GTTableau] = []

    def rec(rows):
        last = rows[-1]
        if len(last) == 1:
            out.append(GTTableau(tuple(rows)))
            return
        ranges = [range(last[b + 1], last[b] + 1) for b in range(len(last) - 1)]
        for nxt in itertools.product(*ranges):
            rows.append(nxt)
            rec(rows)
            rows.pop()

    rec([top])
    return out


def gt_count(lam: YoungTableau | Sequence[int]) -> int:
    """Number of GT tableaux with top row ``lam``, by dynamic programming."""
    return _count_below(tuple(lam))


@lru_cache(maxsize=None)
def _count_below(row: tuple[int, ...]) -> int:
    if len(row) == 1:
        return 1
    ranges = [range(row[b + 1], row[b] + 1) for b in range(len(row) - 1)]
    return sum(_count_below(nxt) for nxt in itertools.product(*ranges))


def truncation(ell: int, max_top: int) -> list[GTTableau]:
    """Every normalized tableau (``r_{1,l+1} = 0``) with ``r_11 <= max_top``."""
    out = []
    for n in range(max_top + 1):
        for lam in enumerate_young(ell, n):
            out.extend(enumerate_gt(lam))
    return out
