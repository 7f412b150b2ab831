"""Modular flats and the generalized parallel connection.

The construction is a representation amalgam: the second matroid's
coordinates are changed so that its glued columns coincide with the first
matroid's, and the rest of its span gets fresh coordinates.  The flat-family
definition is only used as an independent check in
``verify_flats_definition``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .errors import NotAFlatError, NotRepresentableAmalgamError, PreconditionError
from .matroid import Matroid, _eliminate, iter_bits


@dataclass(frozen=True)
class GpcSpec:
    m1: Matroid
    m2: Matroid
    glue: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "glue", tuple(tuple(p) for p in self.glue))

    @property
    def t1(self) -> int:
        return self.m1.mask_of(a for a, _ in self.glue)

    @property
    def t2(self) -> int:
        return self.m2.mask_of(b for _, b in self.glue)


def is_modular_flat_mask(M: Matroid, F: int) -> bool:
    if not M.is_flat(F):
        raise NotAFlatError("modularity is tested on flats only")
    rf = M.rank_of(F)
    return all(rf + M.rank_of(G) == M.rank_of(F | G) + M.rank_of(F & G) for G in M.all_flats)


def is_modular_flat(M: Matroid, F) -> bool:
    return is_modular_flat_mask(M, M.mask_of(F))


def _restriction_hyperplanes(M: Matroid, T: int) -> set[frozenset]:
    R = M.submatroid(T)
    return {R.labels_of(h) for h in R.hyperplane_masks}


def check_spec(spec: GpcSpec) -> None:
    """Raise PreconditionError unless the glue is a modular-flat isomorphism."""
    m1, m2 = spec.m1, spec.m2
    if m1.field != m2.field:
        raise PreconditionError("both matroids must be represented over the same field")
    firsts = [a for a, _ in spec.glue]
    seconds = [b for _, b in spec.glue]
    if len(set(firsts)) != len(firsts) or len(set(seconds)) != len(seconds):
        raise PreconditionError("glue must be a bijection")
    t1, t2 = spec.t1, spec.t2
    if not m1.is_flat(t1) or not m2.is_flat(t2):
        raise PreconditionError("glued sets must be flats of both matroids")
    if not is_modular_flat_mask(m1, t1):
        raise PreconditionError("glued flat is not modular in the first matroid")
    if m1.rank_of(t1) != m2.rank_of(t2):
        raise PreconditionError("glued restrictions have different ranks")
    to2 = dict(spec.glue)
    h1 = {frozenset(to2[x] for x in h) for h in _restriction_hyperplanes(m1, t1)}
    if h1 != _restriction_hyperplanes(m2, t2):
        raise PreconditionError("glue is not an isomorphism of the restrictions")
    clash = m1.ground & (m2.ground - set(seconds))
    if clash:
        raise PreconditionError(f"unglued labels occur in both matroids: {sorted(clash)}")


def _solve_coords(basis: Sequence[tuple[int, ...]], v: tuple[int, ...], f) -> list[int]:
    """Coordinates of ``v`` in the given basis of the full space."""
    r = len(v)
    rows = [[b[i] for b in basis] + [v[i]] for i in range(r)]
    red, pivots = _eliminate(rows, range(len(basis)), f)
    assert len(pivots) == len(basis)
    return [red[i][-1] for i in range(len(basis))]


def _extend_to_basis(vectors: list[tuple[int, ...]], r: int, f) -> list[tuple[int, ...]]:
    ext = list(vectors)
    for j in range(r):
        u = tuple(1 if t == j else 0 for t in range(r))
        rows = [[v[t] for v in ext + [u]] for t in range(r)]
        if len(_eliminate(rows, range(len(ext) + 1), f)[1]) == len(ext) + 1:
            ext.append(u)
    return ext


def gpc(spec: GpcSpec, check: bool = True) -> Matroid:
    """P_T(m1, m2): glued labels take m1's names; m1's elements come first."""
    if check:
        check_spec(spec)
    m1, m2 = spec.m1, spec.m2
    f = m1.field
    to1 = {b: a for a, b in spec.glue}
    tb = list(iter_bits(spec.t2))
    basis_idx: list[int] = []
    span = 0
    for i in tb:
        if m2.rank_of(span | (1 << i)) > len(basis_idx):
            basis_idx.append(i)
            span |= 1 << i
    k = len(basis_idx)
    partner = {i: m1.points[m1._index[to1[m2.labels[i]]]] for i in tb}
    targets = [partner[i] for i in basis_idx]
    others = [i for i in tb if i not in basis_idx]

    def image(alpha, scales):
        head = [0] * m1.rank
        for a, s, b in zip(alpha, scales, targets):
            c = f.mul(a, s)
            if c:
                head = [f.add(x, f.mul(c, y)) for x, y in zip(head, b)]
        return tuple(head) + tuple(alpha[k:])

    pad = (0,) * (m2.rank - k)
    # a field automorphism applied to all of m2's coordinates is another
    # representation of m2; it is needed when the glue is only semilinear
    for sigma in f.automorphisms():
        pts2 = [tuple(sigma[c] for c in p) for p in m2.points]
        ext = _extend_to_basis([pts2[i] for i in basis_idx], m2.rank, f)
        coords = [_solve_coords(ext, p, f) for p in pts2]
        for rest in product(range(1, f.q), repeat=max(k - 1, 0)):
            scales = ((1,) + rest) if k else ()
            if all(f.normalize(image(coords[i], scales)) == partner[i] + pad for i in others):
                return _assemble(spec, [image(c, scales) for c in coords])
    raise NotRepresentableAmalgamError("no linear identification of the glued flats exists")


def _assemble(spec: GpcSpec, images: list[tuple[int, ...]]) -> Matroid:
    m1, m2 = spec.m1, spec.m2
    k = m2.rank_of(spec.t2)
    pad = (0,) * (m2.rank - k)
    vecs = [p + pad for p in m1.points]
    labels = list(m1.labels)
    glued2 = spec.t2
    for i in range(m2.n):
        if glued2 >> i & 1:
            continue
        vecs.append(m1.field.normalize(images[i]))
        labels.append(m2.labels[i])
    return Matroid(m1.field, m1.rank + m2.rank - k, tuple(vecs), tuple(labels))


@dataclass
class FlatsCheck:
    ok: bool
    counterexample: frozenset | None = None
    reason: str = ""
    flats_checked: int = 0
    glue_ranks: list[int] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_flats_definition(P: Matroid, spec: GpcSpec) -> FlatsCheck:
    """Compare P's flats with the flat-family definition and check the rank identity."""
    m1, m2 = spec.m1, spec.m2
    to1 = {b: a for a, b in spec.glue}
    name2 = [to1.get(lab, lab) for lab in m2.labels]
    e1 = P.mask_of(m1.labels)
    e2 = P.mask_of(name2)
    en = e1 & e2

    def lift1(mask):
        return P.mask_of(m1.labels[i] for i in iter_bits(mask))

    def lift2(mask):
        return P.mask_of(name2[i] for i in iter_bits(mask))

    flats1 = {lift1(F) for F in m1.all_flats}
    flats2 = {lift2(F) for F in m2.all_flats}
    predicted = {a | b for a in flats1 for b in flats2 if a & en == b & en}
    actual = set(P.all_flats)
    for X in sorted(predicted ^ actual):
        side = "missing from" if X in predicted else "extra in"
        return FlatsCheck(False, P.labels_of(X), f"flat {side} the construction")
    check = FlatsCheck(True, flats_checked=len(actual))
    for F in sorted(actual):
        lhs = P.rank_of(F)
        gn = P.rank_of(F & en)
        rhs = P.rank_of(F & e1) + P.rank_of(F & e2) - gn
        if lhs != rhs:
            return FlatsCheck(False, P.labels_of(F), f"rank identity fails: {lhs} != {rhs}")
        check.glue_ranks.append(gn)
    return check
