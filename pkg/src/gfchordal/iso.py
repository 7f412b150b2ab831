"""Matroid isomorphism: canonical forms and recognizers for named matroids.

Canonical forms come from an individualization-refinement search over the
element/flat incidence structure.  Leaves of the search tree are total
orders of the elements; the certificate of a leaf is the sorted tuple of
hyperplane bitmasks after relabelling, and the canonical form keeps the
least certificate.  Automorphisms found along the way (two leaves with the
same certificate) prune sibling branches in the same orbit.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache

from .errors import TooLargeError
from .matroid import Matroid, iter_bits
from .projective import count_points

MAX_ELEMENTS = 24


@dataclass(frozen=True, order=True)
class CanonicalForm:
    n: int
    rank: int
    profile: tuple[tuple[int, ...], ...]
    incidence: tuple[int, ...]

    def digest(self) -> str:
        return hashlib.sha256(repr(self).encode()).hexdigest()

    def to_json(self) -> dict:
        return {"digest": self.digest(), "profile": [list(p) for p in self.profile]}


def flat_profile(M: Matroid) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(sorted(f.bit_count() for f in level)) for level in M.flats_by_rank)


class _Backjump(Exception):
    def __init__(self, depth: int):
        self.depth = depth


class _Search:
    def __init__(self, M: Matroid):
        self.n = M.n
        self.hyperplanes = M.hyperplane_masks
        # proper flats of rank >= 2; singletons carry no information
        flats = [f for level in M.flats_by_rank[2:-1] for f in level]
        self.flat_elems = [tuple(iter_bits(f)) for f in flats]
        self.flat_rank = [M.rank_of(f) for f in flats]
        self.elem_flats = [[] for _ in range(self.n)]
        for i, elems in enumerate(self.flat_elems):
            for e in elems:
                self.elem_flats[e].append(i)
        self.zeta = None  # (cert, order, path)
        self.best = None
        self.auts: list[tuple[int, ...]] = []

    def refine(self, col: list[int]) -> list[int]:
        ncol = len(set(col))
        fe, fr, ef = self.flat_elems, self.flat_rank, self.elem_flats
        while True:
            fsig = [(fr[i], tuple(sorted(col[e] for e in elems))) for i, elems in enumerate(fe)]
            fid = {s: k for k, s in enumerate(sorted(set(fsig)))}
            fc = [fid[s] for s in fsig]
            esig = [(col[e], tuple(sorted(fc[i] for i in ef[e]))) for e in range(self.n)]
            eid = {s: k for k, s in enumerate(sorted(set(esig)))}
            new = [eid[s] for s in esig]
            if len(eid) == ncol:
                return new
            col, ncol = new, len(eid)

    @staticmethod
    def individualize(col: list[int], v: int) -> list[int]:
        c = col[v]
        out = []
        for e, x in enumerate(col):
            if x > c or (x == c and e != v):
                out.append(x + 1)
            else:
                out.append(x)
        return out

    def certificate(self, col: list[int]) -> tuple[int, ...]:
        out = []
        for h in self.hyperplanes:
            m = 0
            for e in iter_bits(h):
                m |= 1 << col[e]
            out.append(m)
        return tuple(sorted(out))

    def orbit_roots(self, prefix: list[int]):
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.auts:
            if all(g[p] == p for p in prefix):
                for e in range(self.n):
                    a, b = find(e), find(g[e])
                    if a != b:
                        parent[a] = b
        return find

    def leaf(self, col: list[int], path: list[int]):
        cert = self.certificate(col)
        if self.zeta is None:
            self.zeta = self.best = (cert, col, list(path))
            return
        for ref in (self.zeta, self.best):
            if cert == ref[0]:
                # ref leaf -> this leaf, matched by position
                at = [0] * self.n
                for e, pos in enumerate(col):
                    at[pos] = e
                self.auts.append(tuple(at[pos] for pos in ref[1]))
                d = 0
                while d < min(len(path), len(ref[2])) and path[d] == ref[2][d]:
                    d += 1
                raise _Backjump(d)
        if cert < self.best[0]:
            self.best = (cert, col, list(path))

    def run(self, col: list[int], path: list[int]):
        col = self.refine(col)
        sizes: dict[int, int] = {}
        for x in col:
            sizes[x] = sizes.get(x, 0) + 1
        target = next((c for c in sorted(sizes) if sizes[c] > 1), None)
        if target is None:
            self.leaf(col, path)
            return
        cell = [e for e in range(self.n) if col[e] == target]
        explored: list[int] = []
        depth = len(path)
        for v in cell:
            if explored:
                find = self.orbit_roots(path)
                if find(v) in {find(u) for u in explored}:
                    continue
            try:
                self.run(self.individualize(col, v), path + [v])
            except _Backjump as jump:
                if jump.depth < depth:
                    raise
            explored.append(v)


def _check_size(M: Matroid):
    if M.n > MAX_ELEMENTS:
        raise TooLargeError(f"isomorphism search is bounded to {MAX_ELEMENTS} elements, got {M.n}")


def canonical_form(M: Matroid) -> CanonicalForm:
    cached = M.__dict__.get("_canonical_form")
    if cached is not None:
        return cached
    _check_size(M)
    profile = flat_profile(M)
    if M.rank <= 2:
        # every simple matroid of rank <= 2 is uniform
        incidence = tuple(1 << i for i in range(M.n)) if M.rank == 2 else ((0,) if M.rank == 1 else ())
        form = CanonicalForm(M.n, M.rank, profile, incidence)
    else:
        search = _Search(M)
        search.run([0] * M.n, [])
        form = CanonicalForm(M.n, M.rank, profile, search.best[0])
    M.__dict__["_canonical_form"] = form
    return form


def automorphisms_found(M: Matroid) -> list[tuple[int, ...]]:
    """Automorphisms discovered by the canonical search (a generating set is not guaranteed)."""
    search = _Search(M)
    search.run([0] * M.n, [])
    return search.auts


def is_isomorphic(M: Matroid, N: Matroid) -> bool:
    if (M.n, M.rank) != (N.n, N.rank):
        return False
    _check_size(M)
    _check_size(N)
    if flat_profile(M) != flat_profile(N):
        return False
    return canonical_form(M) == canonical_form(N)


def find_isomorphism(M: Matroid, N: Matroid) -> dict[str, str] | None:
    """Circuit-preserving label bijection M -> N by plain backtracking, or None.

    Independent of the canonical-form search; used as its test oracle.
    """
    if (M.n, M.rank) != (N.n, N.rank):
        return None
    cm, cn = M.circuit_masks, N.circuit_masks
    if len(cm) != len(cn):
        return None
    target = set(cn)
    n = M.n
    # circuits of M grouped by their highest element, checked once it is mapped
    closing: list[list[int]] = [[] for _ in range(n)]
    for c in cm:
        closing[c.bit_length() - 1].append(c)
    img = [0] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for j in range(n):
            if used[j]:
                continue
            img[i] = j
            ok = True
            for c in closing[i]:
                m = 0
                for e in iter_bits(c):
                    m |= 1 << img[e]
                if m not in target:
                    ok = False
                    break
            if ok:
                used[j] = True
                if extend(i + 1):
                    return True
                used[j] = False
        return False

    if not extend(0):
        return None
    return {M.labels[i]: N.labels[img[i]] for i in range(n)}


def is_projective_geometry(M: Matroid) -> int | None:
    """Rank k when M is P_k over its own field, else None (P_0 is the empty matroid)."""
    if M.n == count_points(M.rank, M.q):
        return M.rank
    return None


@lru_cache(maxsize=None)
def _mk4_form() -> CanonicalForm:
    from .geometry import construct_mk4

    return canonical_form(construct_mk4())


def _is_arc(M: Matroid) -> bool:
    return all(line.bit_count() == 2 for line in M.flats_by_rank[2])


def forbidden_names(q: int) -> list[str]:
    if q == 2:
        return ["M(K4)", "U(3,4)"]
    return [f"U(2,{k})" for k in range(3, q + 1)] + [f"U(3,{q + 2})"]


def detect_forbidden(M: Matroid, q: int) -> str | None:
    """Name of the forbidden induced minor for GF(q)-chordality that M is, if any."""
    if q == 2:
        if M.rank == 3 and M.n == 4 and _is_arc(M):
            return "U(3,4)"
        if M.rank == 3 and M.n == 6 and canonical_form(M) == _mk4_form():
            return "M(K4)"
        return None
    if M.rank == 2 and 2 < M.n <= q:
        return f"U(2,{M.n})"
    if M.rank == 3 and M.n == q + 2 and _is_arc(M):
        return f"U(3,{q + 2})"
    return None
