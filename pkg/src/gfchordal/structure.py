"""Vertical separations, dividers and roundness.

The partition scans are exhaustive: X always holds the element with the
smallest label, so each unordered partition is visited once.  For a
partition (X, Y) write lam = r(X) + r(Y) - r(M).  It is a vertical
k-separation iff lam <= k - 1 <= min(r(X), r(Y)) - 1, hence it is a vertical
separation of *some* order iff min(r(X), r(Y)) >= lam + 1, and in that case it
is exact for k = lam + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import TooLargeError
from .matroid import Matroid

MAX_PARTITION_ELEMENTS = 24


@dataclass(frozen=True)
class SeparationReport:
    X: frozenset
    Y: frozenset
    k: int
    exact: bool
    local_conn: int
    intersection_flat: frozenset

    def to_json(self) -> dict:
        return {
            "X": sorted(self.X),
            "Y": sorted(self.Y),
            "k": self.k,
            "exact": self.exact,
            "local_conn": self.local_conn,
            "intersection_flat": sorted(self.intersection_flat),
        }


def local_connectivity(M: Matroid, X, Y) -> int:
    x, y = M.mask_of(X), M.mask_of(Y)
    return M.rank_of(x) + M.rank_of(y) - M.rank_of(x | y)


def _ranker(M: Matroid):
    if M.n <= 16:
        return M.rank_table.__getitem__
    return M.rank_of


def _partitions(M: Matroid) -> Iterator[tuple[int, int]]:
    n = M.n
    if n > MAX_PARTITION_ELEMENTS:
        raise TooLargeError(f"partition scans are bounded to {MAX_PARTITION_ELEMENTS} elements, got {n}")
    if n < 2:
        return
    pivot = min(range(n), key=lambda i: M.labels[i])
    others = [i for i in range(n) if i != pivot]
    full = M.full
    for code in range(1 << (n - 1)):
        x = 1 << pivot
        c, j = code, 0
        while c:
            if c & 1:
                x |= 1 << others[j]
            c >>= 1
            j += 1
        if x != full:
            yield x, full ^ x


def _report(M: Matroid, x: int, y: int, k: int, lam: int) -> SeparationReport:
    inter = M.closure_of(x) & M.closure_of(y)
    return SeparationReport(M.labels_of(x), M.labels_of(y), k, lam == k - 1, lam, M.labels_of(inter))


def vertical_separations(M: Matroid, k: int) -> list[SeparationReport]:
    """All vertical k-separations (exact or not) for the given k."""
    rk = _ranker(M)
    r = M.rank
    out = []
    for x, y in _partitions(M):
        rx, ry = rk(x), rk(y)
        lam = rx + ry - r
        if lam <= k - 1 and min(rx, ry) >= k:
            out.append(_report(M, x, y, k, lam))
    return out


def _divider_masks(M: Matroid) -> list[tuple[int, int, int]]:
    rk = _ranker(M)
    r = M.rank
    out = []
    for x, y in _partitions(M):
        rx, ry = rk(x), rk(y)
        lam = rx + ry - r
        if min(rx, ry) >= lam + 1:
            out.append((x, y, lam))
    return out


def dividers(M: Matroid) -> list[SeparationReport]:
    """Every exact vertical k-separation, k = r(X) + r(Y) - r(M) + 1."""
    return [_report(M, x, y, lam + 1, lam) for x, y, lam in _divider_masks(M)]


def minimal_dividers(M: Matroid, pool: str = "all") -> list[SeparationReport]:
    """Dividers whose closure intersection has no strictly smaller competitor.

    ``pool="all"`` compares against every vertical separation of any order,
    ``pool="dividers"`` only against exact ones.  By the remark in the module
    docstring both pools consist of the same partitions.
    """
    if pool not in ("all", "dividers"):
        raise ValueError("pool must be 'all' or 'dividers'")
    divs = _divider_masks(M)
    rk = _ranker(M)
    r = M.rank
    comp = []
    for x, y in _partitions(M):
        rx, ry = rk(x), rk(y)
        lam = rx + ry - r
        if pool == "all":
            if any(lam <= k - 1 and min(rx, ry) >= k for k in range(1, min(rx, ry) + 1)):
                comp.append((x, y))
        elif min(rx, ry) >= lam + 1:
            comp.append((x, y))
    inter = {}
    for x, y in comp:
        inter[(x, y)] = M.closure_of(x) & M.closure_of(y)
    seen = set(inter.values())
    minimal = {I for I in seen if not any(J != I and J & I == J for J in seen)}
    return [_report(M, x, y, lam + 1, lam) for x, y, lam in divs if inter[(x, y)] in minimal]


def is_round(M: Matroid) -> bool:
    """No two hyperplanes cover E (equivalently, no two disjoint cocircuits)."""
    hs = M.hyperplane_masks
    full = M.full
    for i, h in enumerate(hs):
        for g in hs[i:]:
            if h | g == full:
                return False
    return True


def has_vertical_separation(M: Matroid) -> bool:
    """Brute-force scan for a vertical k-separation of any order."""
    rk = _ranker(M)
    r = M.rank
    for x, y in _partitions(M):
        rx, ry = rk(x), rk(y)
        if min(rx, ry) >= rx + ry - r + 1:
            return True
    return False


def minimal_splits(M: Matroid) -> list[tuple[int, int, int]]:
    """Minimal closure intersections found from pairs of non-spanning flats.

    For non-spanning flats A, B with A | B = E, the partition (A - B, B) is a
    vertical separation whose closure intersection lies inside A & B; every
    vertical separation arises this way from its own closures.  So the
    inclusion-minimal values of A & B are exactly the intersection flats of
    the minimal dividers.  Returns ``(I, X, Y)`` masks, one partition per
    minimal intersection, ordered by ``I``.
    """
    r = M.rank
    full = M.full
    proper = [F for F in M.all_flats if F and M.rank_of(F) < r]
    first: dict[int, tuple[int, int]] = {}
    for i, A in enumerate(proper):
        for B in proper[i + 1:]:
            if A | B == full:
                first.setdefault(A & B, (A, B))
    values = list(first)
    out = []
    for I in sorted(values):
        if any(J != I and J & I == J for J in values):
            continue
        A, B = first[I]
        x, y = A & ~B, B
        assert M.closure_of(x) & M.closure_of(y) == I
        out.append((I, x, y))
    return out


def split_report(M: Matroid, x: int, y: int) -> SeparationReport:
    lam = M.rank_of(x) + M.rank_of(y) - M.rank
    return _report(M, x, y, lam + 1, lam)
