"""Simple GF(q)-represented matroids.

A matroid is an ordered list of distinct normalized points of PG(r-1, q)
(the columns of a full-row-rank representation) with one string label per
point.  Internally subsets are int bitmasks over element positions; the
public helpers at the bottom of the module take and return frozensets of
labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import NotAFlatError, PreconditionError, RankOutOfRangeError, UnknownLabelError
from .field import FieldSpec
from .projective import AmbientSpace, Point, ambient

SubsetMask = frozenset  # of labels


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _eliminate(rows: list[list[int]], col_order: Iterable[int], f: FieldSpec):
    """Gauss-Jordan elimination taking pivots in ``col_order``.

    Returns the reduced rows and the list of pivot columns; pivot ``i`` lives
    in row ``i``.
    """
    rows = [list(r) for r in rows]
    nr = len(rows)
    pivots: list[int] = []
    add = f.add_table
    for c in col_order:
        pr = len(pivots)
        if pr == nr:
            break
        piv = next((i for i in range(pr, nr) if rows[i][c]), None)
        if piv is None:
            continue
        rows[pr], rows[piv] = rows[piv], rows[pr]
        scale = f.mul_table[f.inv_table[rows[pr][c]]]
        prow = rows[pr] = [scale[x] for x in rows[pr]]
        for i in range(nr):
            if i != pr and rows[i][c]:
                m = f.mul_table[f.neg_table[rows[i][c]]]
                rows[i] = [add[x][m[y]] for x, y in zip(rows[i], prow)]
        pivots.append(c)
    return rows, pivots


def _columns(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    return [tuple(r[j] for r in rows) for j in range(ncols)]


def trim_vectors(vectors: Sequence[Sequence[int]], field: FieldSpec) -> list[tuple[int, ...]]:
    """Re-express column vectors in coordinates of their span.

    Vectors that already span their ambient space are returned unchanged.
    """
    if not vectors:
        return []
    r = len(vectors[0])
    rows = [[v[i] for v in vectors] for i in range(r)]
    red, pivots = _eliminate(rows, range(len(vectors)), field)
    if len(pivots) == r:
        return [tuple(v) for v in vectors]
    return _columns(red[: len(pivots)], len(vectors))


@dataclass(frozen=True)
class Matroid:
    field: FieldSpec
    ambient_rank: int
    points: tuple[Point, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.points) != len(self.labels):
            raise PreconditionError("points and labels differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise PreconditionError("labels must be unique")
        if len(set(self.points)) != len(self.points):
            raise PreconditionError("points must be distinct (matroids are simple)")
        for p in self.points:
            if len(p) != self.ambient_rank:
                raise PreconditionError(f"point {p} has length != {self.ambient_rank}")
            if not all(0 <= c < self.field.q for c in p):
                raise PreconditionError(f"point {p} has entries outside GF({self.field.q})")
            if not self.field.is_normalized(p):
                raise PreconditionError(f"point {p} is zero or not normalized")
        if self.rank_of(self.full) != self.ambient_rank:
            raise PreconditionError("representation is not of full row rank")

    @classmethod
    def from_vectors(cls, field: FieldSpec, vectors: Sequence[Sequence[int]],
                     labels: Sequence[str] | None = None, rank: int | None = None) -> "Matroid":
        """Build a matroid from arbitrary nonzero column vectors.

        Columns are normalized and the representation is trimmed to full row
        rank.  ``rank`` gives the vector length when ``vectors`` is empty.
        """
        vectors = [field.normalize(v) for v in vectors]
        if labels is None:
            labels = [f"e{i}" for i in range(len(vectors))]
        if not vectors:
            return cls(field, 0, (), ())
        vectors = trim_vectors(vectors, field)
        return cls(field, len(vectors[0]), tuple(field.normalize(v) for v in vectors), tuple(labels))

    def __repr__(self):
        return f"Matroid(GF({self.field.q}), rank={self.ambient_rank}, n={self.n})"

    # basic accessors

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def rank(self) -> int:
        return self.ambient_rank

    @property
    def full(self) -> int:
        return (1 << len(self.points)) - 1

    @property
    def ground(self) -> frozenset:
        return frozenset(self.labels)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def mask_of(self, subset: Iterable[str]) -> int:
        idx = self._index
        m = 0
        for lab in subset:
            try:
                m |= 1 << idx[lab]
            except KeyError:
                raise UnknownLabelError(f"unknown element label {lab!r}") from None
        return m

    def labels_of(self, mask: int) -> frozenset:
        return frozenset(self.labels[i] for i in iter_bits(mask))

    def sorted_labels(self, mask: int) -> list[str]:
        return [self.labels[i] for i in iter_bits(mask)]

    # rank and closure through the ambient projective space

    @cached_property
    def _ambient(self) -> AmbientSpace:
        return ambient(self.ambient_rank, self.field)

    @cached_property
    def _aidx(self) -> tuple[int, ...]:
        index = self._ambient.index
        return tuple(index[p] for p in self.points)

    @cached_property
    def _amb_to_elem(self) -> dict[int, int]:
        return {a: i for i, a in enumerate(self._aidx)}

    @cached_property
    def _present(self) -> int:
        m = 0
        for a in self._aidx:
            m |= 1 << a
        return m

    @cached_property
    def _spans(self) -> dict[int, int]:
        return {0: 0}

    def span(self, mask: int) -> int:
        """Ambient bitmask of the projective span of the elements in ``mask``."""
        spans = self._spans
        s = spans.get(mask)
        if s is not None:
            return s
        # peel elements off until a cached prefix is found, then rebuild
        stack = []
        m = mask
        while m not in spans:
            low = m & -m
            stack.append(low)
            m ^= low
        s = spans[m]
        amb = self._ambient
        aidx = self._aidx
        for low in reversed(stack):
            m |= low
            s = amb.join(s, aidx[low.bit_length() - 1])
            spans[m] = s
        return s

    def rank_of(self, mask: int) -> int:
        return self._ambient.span_rank(self.span(mask))

    def closure_of(self, mask: int) -> int:
        hit = self.span(mask) & self._present
        a2e = self._amb_to_elem
        out = 0
        while hit:
            low = hit & -hit
            out |= 1 << a2e[low.bit_length() - 1]
            hit ^= low
        return out

    def is_flat(self, mask: int) -> bool:
        return self.closure_of(mask) == mask

    @cached_property
    def rank_table(self) -> list[int]:
        """Rank of every subset, indexed by bitmask (only sensible for small n)."""
        n = self.n
        amb = self._ambient
        aidx = self._aidx
        spans = [0] * (1 << n)
        ranks = [0] * (1 << n)
        s2r = amb.size_to_rank
        for m in range(1, 1 << n):
            low = m & -m
            s = spans[m] = amb.join(spans[m ^ low], aidx[low.bit_length() - 1])
            ranks[m] = s2r[s.bit_count()]
        return ranks

    # flats, circuits, cocircuits

    @cached_property
    def flats_by_rank(self) -> tuple[tuple[int, ...], ...]:
        """All flats as masks, grouped by rank and sorted within each rank."""
        levels = [(0,)]
        full = self.full
        for _ in range(self.rank):
            nxt = set()
            for f in levels[-1]:
                rest = full & ~f
                while rest:
                    low = rest & -rest
                    rest ^= low
                    g = self.closure_of(f | low)
                    nxt.add(g)
                    rest &= ~g
            levels.append(tuple(sorted(nxt)))
        return tuple(levels)

    @property
    def hyperplane_masks(self) -> tuple[int, ...]:
        if self.rank == 0:
            return ()
        return self.flats_by_rank[self.rank - 1]

    @cached_property
    def all_flats(self) -> tuple[int, ...]:
        return tuple(f for level in self.flats_by_rank for f in level)

    @cached_property
    def circuit_masks(self) -> tuple[int, ...]:
        out = []
        for size in range(1, self.rank + 2):
            for combo in combinations(range(self.n), size):
                m = 0
                for i in combo:
                    m |= 1 << i
                if self.rank_of(m) != size - 1:
                    continue
                if all(self.rank_of(m & ~(1 << i)) == size - 1 for i in combo):
                    out.append(m)
        return tuple(out)

    @property
    def cocircuit_masks(self) -> tuple[int, ...]:
        return tuple(sorted(self.full & ~h for h in self.hyperplane_masks))

    # minors

    def submatroid(self, mask: int) -> "Matroid":
        """Restriction to an arbitrary subset, trimmed to full row rank."""
        idx = list(iter_bits(mask))
        if not idx:
            return Matroid(self.field, 0, (), ())
        vecs = [self.points[i] for i in idx]
        return Matroid.from_vectors(self.field, vecs, [self.labels[i] for i in idx])

    def restrict(self, mask: int) -> "Matroid":
        if not self.is_flat(mask):
            raise NotAFlatError("induced restrictions are restrictions to flats")
        return self.submatroid(mask)

    def contract(self, mask: int) -> "Matroid":
        """Simplification of the contraction by ``mask``."""
        if mask == 0:
            return self
        f = self.field
        sidx = list(iter_bits(mask))
        rest = [i for i in range(self.n) if not mask >> i & 1]
        rows = [[p[i] for p in self.points] for i in range(self.ambient_rank)]
        red, pivots = _eliminate(rows, sidx + rest, f)
        k = sum(1 for c in pivots if mask >> c & 1)
        keep = red[k:len(pivots)]
        classes: dict[tuple[int, ...], list[int]] = {}
        for j in rest:
            v = tuple(row[j] for row in keep)
            if any(v):
                classes.setdefault(f.normalize(v), []).append(j)
        reps = []
        for v, members in classes.items():
            rep = min(members, key=lambda j: self.labels[j])
            reps.append((rep, v))
        reps.sort()
        return Matroid(f, len(keep), tuple(v for _, v in reps), tuple(self.labels[j] for j, _ in reps))

    def relabel(self, labels: Sequence[str]) -> "Matroid":
        return Matroid(self.field, self.ambient_rank, self.points, tuple(labels))


# label-level API


def _mask(M: Matroid, S) -> int:
    return M.mask_of(S)


def rank(M: Matroid, S: Iterable[str]) -> int:
    return M.rank_of(_mask(M, S))


def closure(M: Matroid, S: Iterable[str]) -> SubsetMask:
    return M.labels_of(M.closure_of(_mask(M, S)))


def flats(M: Matroid, k: int) -> list[SubsetMask]:
    if not 0 <= k <= M.rank:
        raise RankOutOfRangeError(f"rank {k} outside 0..{M.rank}")
    return [M.labels_of(f) for f in M.flats_by_rank[k]]


def circuits(M: Matroid) -> list[SubsetMask]:
    return [M.labels_of(c) for c in M.circuit_masks]


def cocircuits(M: Matroid) -> list[SubsetMask]:
    return [M.labels_of(c) for c in M.cocircuit_masks]


def restrict_to_flat(M: Matroid, F: Iterable[str]) -> Matroid:
    return M.restrict(_mask(M, F))


def contract_simplify(M: Matroid, S: Iterable[str]) -> Matroid:
    return M.contract(_mask(M, S))


def delete(M: Matroid, S: Iterable[str]) -> Matroid:
    return M.submatroid(M.full & ~_mask(M, S))


def direct_sum(M1: Matroid, M2: Matroid) -> Matroid:
    if M1.field != M2.field:
        raise PreconditionError("direct sum needs a common field")
    r1, r2 = M1.rank, M2.rank
    vecs = [p + (0,) * r2 for p in M1.points] + [(0,) * r1 + p for p in M2.points]
    return Matroid(M1.field, r1 + r2, tuple(vecs), M1.labels + M2.labels)
