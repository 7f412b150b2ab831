"""Orbit enumeration of point subsets of PG(r-1, q) under the collineation group.

The group acts on point indices (positions in ``pg_points``), so a subset
is an int bitmask over the points.  Each orbit is represented by its
numerically least bitmask.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .errors import MalformedDocumentError, TooLargeError
from .field import FieldSpec, make_field
from .iso import canonical_form
from .matroid import Matroid
from .projective import ambient, pg_points


def _encode(v, q: int) -> int:
    out = 0
    for c in v:
        out = out * q + c
    return out


@lru_cache(maxsize=None)
def _group_array(r: int, q: int) -> np.ndarray:
    f = make_field(q)
    pts = pg_points(r, f)
    npts = len(pts)
    # vector code -> index of the point it spans
    lookup = np.full(q**r, -1, dtype=np.int64)
    for i, p in enumerate(pts):
        for s in range(1, q):
            lookup[_encode(tuple(f.mul(s, c) for c in p), q)] = i
    vectors = [v for v in np.ndindex(*([q] * r))]

    def span_add(span: set, v) -> set:
        out = set(span)
        for s in range(1, q):
            sv = tuple(f.mul(s, c) for c in v)
            out |= {tuple(f.add(a, b) for a, b in zip(u, sv)) for u in span}
        return out

    # columns of a matrix are the images of the unit vectors; the first
    # column is taken normalized, which quotients out the scalars
    mats = []

    def extend(cols, span):
        if len(cols) == r:
            mats.append(cols)
            return
        pool = pts if not cols else vectors
        for v in pool:
            v = tuple(int(c) for c in v)
            if v in span:
                continue
            extend(cols + [v], span_add(span, v))

    extend([], {tuple([0] * r)})
    A = np.array(mats, dtype=np.int64)  # (G, r cols, r coords)
    P = np.array(pts, dtype=np.int64)  # (N, r)
    add = np.array(f.add_table, dtype=np.int64)
    mul = np.array(f.mul_table, dtype=np.int64)
    images = np.zeros((len(mats), npts, r), dtype=np.int64)
    for i in range(r):
        # images += P[:, i] * column i
        term = mul[P[:, i][None, :, None], A[:, i, :][:, None, :]]
        images = add[images, term]
    codes = np.zeros((len(mats), npts), dtype=np.int64)
    for j in range(r):
        codes = codes * q + images[:, :, j]
    linear = lookup[codes]
    perms = []
    for sigma in f.automorphisms():
        sperm = np.array([lookup[_encode([sigma[c] for c in p], q)] for p in pts], dtype=np.int64)
        perms.append(sperm[linear])
    out = np.unique(np.concatenate(perms), axis=0)
    return out


def group_elements(r: int, field: FieldSpec) -> np.ndarray:
    """PGammaL(r, q) acting on pg_points(r, q); row g maps point i to g[i]."""
    if r > 4 or field.q > 4 or r < 1:
        raise TooLargeError(f"group generation is bounded to 1 <= r <= 4 and q <= 4, got r={r}, q={field.q}")
    return _group_array(r, field.q)


def group_checksum(perms: np.ndarray) -> str:
    return hashlib.sha256(np.ascontiguousarray(perms, dtype="<i4").tobytes()).hexdigest()


_WEIGHTS: dict[int, np.ndarray] = {}


def _weights(perms: np.ndarray) -> np.ndarray:
    # row i holds 1 << g[i] for every group element g
    w = _WEIGHTS.get(id(perms))
    if w is None:
        w = _WEIGHTS[id(perms)] = np.ascontiguousarray((np.int64(1) << perms).T)
    return w


def orbit_images(perms: np.ndarray, mask: int) -> np.ndarray:
    """Bitmask image of ``mask`` under every group element."""
    idx = [i for i in range(perms.shape[1]) if mask >> i & 1]
    if not idx:
        return np.zeros(perms.shape[0], dtype=np.int64)
    return _weights(perms)[idx].sum(axis=0)


def min_image(perms: np.ndarray, mask: int) -> int:
    return int(orbit_images(perms, mask).min())


@dataclass
class OrbitEntry:
    mask: int
    orbit_size: int
    spanning: bool
    matroid: Matroid


@dataclass
class OrbitCatalog:
    q: int
    r: int
    group_order: int
    checksum: str
    entries: list[OrbitEntry] = field(default_factory=list)
    spanning_only: bool = True

    @property
    def matroids(self) -> list[Matroid]:
        return [e.matroid for e in self.entries]

    def save(self, path) -> None:
        path = Path(path)
        with path.open("w") as fh:
            header = {"q": self.q, "r": self.r, "group_order": self.group_order,
                      "checksum": self.checksum, "spanning_only": self.spanning_only}
            fh.write(json.dumps(header) + "\n")
            for e in self.entries:
                fh.write(json.dumps({"mask": e.mask, "orbit_size": e.orbit_size, "spanning": e.spanning}) + "\n")

    @classmethod
    def load(cls, path) -> "OrbitCatalog":
        lines = Path(path).read_text().splitlines()
        if not lines:
            raise MalformedDocumentError(f"empty catalog file {path}")
        try:
            head = json.loads(lines[0])
            f = make_field(head["q"])
            perms = group_elements(head["r"], f)
            if group_checksum(perms) != head["checksum"] or len(perms) != head["group_order"]:
                raise MalformedDocumentError(f"group checksum mismatch in {path}")
            cat = cls(head["q"], head["r"], head["group_order"], head["checksum"], spanning_only=head["spanning_only"])
            for line in lines[1:]:
                rec = json.loads(line)
                cat.entries.append(OrbitEntry(rec["mask"], rec["orbit_size"], rec["spanning"],
                                              subset_matroid(head["r"], f, rec["mask"])))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, MalformedDocumentError):
                raise
            raise MalformedDocumentError(f"bad catalog file {path}: {exc}") from None
        return cat


def subset_matroid(r: int, field: FieldSpec, mask: int) -> Matroid:
    pts = pg_points(r, field)
    vecs = [pts[i] for i in range(len(pts)) if mask >> i & 1]
    if not vecs:
        return Matroid(field, 0, (), ())
    return Matroid.from_vectors(field, vecs)


def _is_spanning(r: int, field: FieldSpec, mask: int) -> bool:
    amb = ambient(r, field)
    s = 0
    for i in range(len(amb.points)):
        if mask >> i & 1:
            s = amb.join(s, i)
    return amb.span_rank(s) == r


def enumerate_matroids(r: int, field: FieldSpec, spanning_only: bool = True) -> OrbitCatalog:
    """One representative (least bitmask) per orbit of point subsets of PG(r-1, q)."""
    perms = group_elements(r, field)
    npts = perms.shape[1]
    if npts > 21:
        raise TooLargeError(f"exhaustive enumeration is bounded to 21 points, got {npts}")
    cat = OrbitCatalog(field.q, r, len(perms), group_checksum(perms), spanning_only=spanning_only)
    visited = np.zeros(1 << npts, dtype=bool)
    for mask in range(1 << npts):
        if visited[mask]:
            continue
        images = np.unique(orbit_images(perms, mask))
        visited[images] = True
        spanning = _is_spanning(r, field, mask)
        if spanning or not spanning_only:
            cat.entries.append(OrbitEntry(mask, len(images), spanning, subset_matroid(r, field, mask)))
    return cat


def catalog(r: int, field: FieldSpec, cache_dir: Optional[Path] = None) -> OrbitCatalog:
    """Spanning-orbit catalog, read from or written to ``cache_dir`` when given."""
    if cache_dir is None:
        return enumerate_matroids(r, field, True)
    cache_dir = Path(cache_dir)
    path = cache_dir / f"catalog_r{r}_q{field.q}.jsonl"
    if path.exists():
        return OrbitCatalog.load(path)
    cat = enumerate_matroids(r, field, True)
    cache_dir.mkdir(parents=True, exist_ok=True)
    cat.save(path)
    return cat


def dedupe(matroids: Iterable[Matroid]) -> list[Matroid]:
    seen = set()
    out = []
    for M in matroids:
        form = canonical_form(M)
        if form not in seen:
            seen.add(form)
            out.append(M)
    return out


def corpus(field: FieldSpec, max_rank: int, cache_dir: Optional[Path] = None) -> list[Matroid]:
    """All simple GF(q)-representable matroids of rank <= max_rank, one per isomorphism class."""
    out = [Matroid(field, 0, (), ())]
    for r in range(1, max_rank + 1):
        out.extend(catalog(r, field, cache_dir).matroids)
    return dedupe(out)


def sample_orbits(r: int, field: FieldSpec, count: int, seed: int = 0) -> list[OrbitEntry]:
    """Orbit representatives of ``count`` random spanning subsets, deduplicated."""
    perms = group_elements(r, field)
    npts = perms.shape[1]
    rng = random.Random(seed)
    reps: dict[int, OrbitEntry] = {}
    drawn = 0
    points = list(range(npts))
    while drawn < count:
        # subset sizes are drawn uniformly so small and large subsets both occur
        mask = sum(1 << i for i in rng.sample(points, rng.randint(r, npts)))
        if not _is_spanning(r, field, mask):
            continue
        drawn += 1
        images = orbit_images(perms, mask)
        rep = int(images.min())
        if rep not in reps:
            reps[rep] = OrbitEntry(rep, len(np.unique(images)), True, subset_matroid(r, field, rep))
    return [reps[k] for k in sorted(reps)]
