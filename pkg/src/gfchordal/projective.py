"""Point sets of PG(r-1, q) and fast span arithmetic inside them.

A matroid on points of PG(r-1, q) computes ranks and closures through
``AmbientSpace``: a set of points is kept as a bitmask over the ambient point
list, and the span of a set grows one point at a time by OR-ing in whole
projective lines.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .field import FieldSpec

Point = tuple[int, ...]


def pg_points(r: int, field: FieldSpec) -> list[Point]:
    """All normalized points of PG(r-1, q) in lexicographic order."""
    if r <= 0:
        return []
    return [v for v in product(range(field.q), repeat=r) if field.is_normalized(v)]


def count_points(r: int, q: int) -> int:
    return (q**r - 1) // (q - 1)


class AmbientSpace:
    """The projective geometry PG(r-1, q) with cached line masks."""

    def __init__(self, r: int, field: FieldSpec):
        self.rank = r
        self.field = field
        self.points = pg_points(r, field)
        self.index = {p: i for i, p in enumerate(self.points)}
        self.size_to_rank = {count_points(k, field.q): k for k in range(r + 1)}
        self._lines: dict[tuple[int, int], int] = {}

    def __len__(self):
        return len(self.points)

    def line(self, a: int, b: int) -> int:
        """Bitmask of the projective line through points ``a`` and ``b``."""
        if a > b:
            a, b = b, a
        key = (a, b)
        mask = self._lines.get(key)
        if mask is None:
            f = self.field
            pa, pb = self.points[a], self.points[b]
            mask = 1 << b
            for lam in range(f.q):
                mul = f.mul_table[lam]
                v = tuple(f.add_table[x][mul[y]] for x, y in zip(pa, pb))
                mask |= 1 << self.index[f.normalize(v)]
            self._lines[key] = mask
        return mask

    def join(self, span: int, p: int) -> int:
        """Span of the subspace ``span`` together with point ``p``."""
        if span >> p & 1:
            return span
        out = span | (1 << p)
        rest = span
        while rest:
            low = rest & -rest
            out |= self.line(low.bit_length() - 1, p)
            rest ^= low
        return out

    def span_rank(self, span: int) -> int:
        return self.size_to_rank[span.bit_count()]

    def span_of(self, idxs) -> int:
        s = 0
        for i in idxs:
            s = self.join(s, i)
        return s


@lru_cache(maxsize=None)
def ambient(r: int, field: FieldSpec) -> AmbientSpace:
    return AmbientSpace(r, field)
