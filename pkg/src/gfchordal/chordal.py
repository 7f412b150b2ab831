"""GF(q)-chordality, N_q membership, induced minors and circuit-chordality."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .errors import TooLargeError
from .gpc import GpcSpec, gpc
from .iso import CanonicalForm, canonical_form, detect_forbidden, is_isomorphic, is_projective_geometry
from .matroid import Matroid
from .structure import SeparationReport, minimal_dividers, minimal_splits, split_report

MAX_MINOR_ELEMENTS = 16


@dataclass
class ConstructionCertificate:
    """A GPC tree.  Leaves are projective geometries ("P3") or round matroids ("round")."""

    elements: frozenset
    leaf: Optional[str] = None
    glue: frozenset = frozenset()
    glue_rank: int = 0
    left: Optional["ConstructionCertificate"] = None
    right: Optional["ConstructionCertificate"] = None

    @property
    def is_leaf(self) -> bool:
        return self.leaf is not None

    def leaves(self) -> list["ConstructionCertificate"]:
        if self.is_leaf:
            return [self]
        return self.left.leaves() + self.right.leaves()

    def _node(self) -> dict:
        if self.is_leaf:
            return {"leaf": self.leaf, "elements": sorted(self.elements)}
        return {
            "join": {
                "glue": sorted(self.glue),
                "glue_rank": self.glue_rank,
                "left": self.left._node(),
                "right": self.right._node(),
            }
        }

    def to_json(self) -> dict:
        return {"kind": "construction", **self._node()}

    def replay(self, M: Matroid) -> Matroid:
        """Rebuild a matroid from M's leaf restrictions by GPC joins."""
        if self.is_leaf:
            return M.submatroid(M.mask_of(self.elements))
        a, b = self.left.replay(M), self.right.replay(M)
        spec = GpcSpec(a, b, tuple((x, x) for x in sorted(self.glue)))
        return gpc(spec)

    def check(self, M: Matroid, leaves: str = "pg") -> bool:
        """Replay the tree and compare with M; also checks the leaf and glue kinds."""
        for node in self.leaves():
            R = M.submatroid(M.mask_of(node.elements))
            if leaves == "pg" and is_projective_geometry(R) is None:
                return False
        if not self._glues_projective(M):
            return False
        return is_isomorphic(self.replay(M), M)

    def _glues_projective(self, M: Matroid) -> bool:
        if self.is_leaf:
            return True
        G = M.submatroid(M.mask_of(self.glue))
        if is_projective_geometry(G) != self.glue_rank:
            return False
        return self.left._glues_projective(M) and self.right._glues_projective(M)


@dataclass(frozen=True)
class ForbiddenWitness:
    contract_flat: frozenset
    restrict_flat: frozenset
    target: str

    def to_json(self) -> dict:
        return {
            "kind": "forbidden",
            "target": self.target,
            "contract_flat": sorted(self.contract_flat),
            "restrict_flat": sorted(self.restrict_flat),
        }

    def minor(self, M: Matroid) -> Matroid:
        N = M.contract(M.mask_of(self.contract_flat))
        return N.restrict(N.mask_of(self.restrict_flat))

    def check(self, M: Matroid) -> bool:
        return detect_forbidden(self.minor(M), M.q) == self.target


# induced minors


def _check_minor_size(M: Matroid):
    if M.n > MAX_MINOR_ELEMENTS:
        raise TooLargeError(f"induced-minor search is bounded to {MAX_MINOR_ELEMENTS} elements, got {M.n}")


def _single_moves(M: Matroid):
    for F in M.all_flats:
        if F != M.full:
            yield M.restrict(F)
    for e in range(M.n):
        yield M.contract(1 << e)


def induced_minors(M: Matroid, max_size: int) -> set[CanonicalForm]:
    """Canonical forms of all induced minors with at most max_size elements.

    Breadth-first closure under single moves: restriction to a flat, or
    contraction of one element followed by simplification.
    """
    _check_minor_size(M)
    start = canonical_form(M)
    seen = {start}
    queue = deque([M])
    while queue:
        N = queue.popleft()
        for K in _single_moves(N):
            form = canonical_form(K)
            if form not in seen:
                seen.add(form)
                queue.append(K)
    return {f for f in seen if f.n <= max_size}


def normal_form_minors(M: Matroid, max_size: int) -> set[CanonicalForm]:
    """Canonical forms of si(M/C)|G for flats C of M and flats G of si(M/C)."""
    _check_minor_size(M)
    out = set()
    for C in M.all_flats:
        N = M.contract(C)
        for G in N.all_flats:
            if G.bit_count() <= max_size:
                out.add(canonical_form(N.submatroid(G)))
    return out


def _target_sizes(q: int) -> dict[int, set[int]]:
    if q == 2:
        return {2: set(), 3: {4, 6}}
    return {2: set(range(3, q + 1)), 3: {q + 2}}


def find_forbidden_induced_minor(M: Matroid) -> Optional[ForbiddenWitness]:
    """First forbidden induced minor si(M/C)|G, scanning C by rank then G by rank."""
    sizes = _target_sizes(M.q)
    for C in M.all_flats:
        if M.rank - M.rank_of(C) < 2:
            continue
        N = M.contract(C)
        for k in (2, 3):
            if k > N.rank:
                break
            for G in N.flats_by_rank[k]:
                if G.bit_count() not in sizes[k]:
                    continue
                name = detect_forbidden(N.submatroid(G), M.q)
                if name:
                    return ForbiddenWitness(M.labels_of(C), N.labels_of(G), name)
    return None


def has_induced_minor(M: Matroid, target: Matroid) -> bool:
    """Induced-minor containment through the one-contraction, one-restriction normal form."""
    want = canonical_form(target)
    for C in M.all_flats:
        if M.rank - M.rank_of(C) < target.rank:
            continue
        N = M.contract(C)
        if target.rank > N.rank:
            continue
        for G in N.flats_by_rank[target.rank]:
            if G.bit_count() == target.n and canonical_form(N.submatroid(G)) == want:
                return True
    return False


# deciders


def _decompose(M: Matroid, rng: Optional[random.Random], leaf_test) -> tuple[Optional[ConstructionCertificate], Optional[SeparationReport]]:
    """Recursive GPC splitting along minimal dividers.

    ``leaf_test`` names a round matroid's leaf or returns None to reject.
    Returns (certificate, None) on success or (None, failing split) on rejection.
    """
    splits = minimal_splits(M)
    if not splits:
        name = leaf_test(M)
        if name is None:
            return None, None
        return ConstructionCertificate(M.ground, leaf=name), None
    I, x, y = rng.choice(splits) if rng is not None else splits[0]
    lam = M.rank_of(x) + M.rank_of(y) - M.rank
    glue = M.submatroid(I)
    if is_projective_geometry(glue) != lam:
        return None, split_report(M, x, y)
    left_mask, right_mask = M.closure_of(x), y
    parts = []
    for mask in (left_mask, right_mask):
        cert, bad = _decompose(M.submatroid(mask), rng, leaf_test)
        if cert is None:
            return None, bad
        parts.append(cert)
    return ConstructionCertificate(M.ground, glue=M.labels_of(I), glue_rank=lam, left=parts[0], right=parts[1]), None


def _pg_leaf(M: Matroid) -> Optional[str]:
    k = is_projective_geometry(M)
    return None if k is None else f"P{k}"


def _round_leaf(M: Matroid) -> Optional[str]:
    k = is_projective_geometry(M)
    return "round" if k is None else f"P{k}"


def is_gfq_chordal(M: Matroid, rng: Optional[random.Random] = None):
    """(True, ConstructionCertificate) or (False, ForbiddenWitness).

    A False answer whose witness is None means the forbidden-minor search
    disagrees with the constructive decision.
    """
    if M.n > 24:
        raise TooLargeError(f"chordality decision is bounded to 24 elements, got {M.n}")
    cert, _ = _decompose(M, rng, _pg_leaf)
    if cert is not None:
        return True, cert
    return False, find_forbidden_induced_minor(M)


def rq_decompose(M: Matroid, rng: Optional[random.Random] = None) -> Optional[ConstructionCertificate]:
    """Round-leaf GPC decomposition across projective glues, or None."""
    cert, _ = _decompose(M, rng, _round_leaf)
    return cert


def nq_definition(M: Matroid, pool: str = "all") -> Optional[SeparationReport]:
    """First minimal divider whose glue is not a projective geometry of rank equal to its local connectivity."""
    for rep in minimal_dividers(M, pool):
        glue = M.submatroid(M.mask_of(rep.intersection_flat))
        if is_projective_geometry(glue) != rep.local_conn:
            return rep
    return None


def is_nq(M: Matroid):
    """(True, round-leaf certificate) or (False, failing SeparationReport).

    The decision is the minimal-divider definition; the certificate comes from
    the recursive decomposition and is None if the two disagree.
    """
    bad = nq_definition(M)
    if bad is not None:
        return False, bad
    return True, rq_decompose(M)


def cfk_chordal(M: Matroid) -> bool:
    """Every circuit of size >= 4 is (C1 | C2) - e for circuits meeting exactly in e."""
    _check_minor_size(M)
    circuits = M.circuit_masks
    cset = set(circuits)
    through: dict[int, list[int]] = {e: [] for e in range(M.n)}
    for c in circuits:
        for e in range(M.n):
            if c >> e & 1:
                through[e].append(c)
    for C in circuits:
        if C.bit_count() < 4:
            continue
        ok = False
        for e in range(M.n):
            if C >> e & 1:
                continue
            bit = 1 << e
            for c1 in through[e]:
                a = c1 ^ bit
                if a & ~C or a == C:
                    continue
                if (C ^ a) | bit in cset:
                    ok = True
                    break
            if ok:
                break
        if not ok:
            return False
    return True
