import random

import pytest

from gfchordal.enumeration import corpus
from gfchordal.errors import TooLargeError
from gfchordal.field import make_field
from gfchordal.geometry import construct_hyperoval, construct_mk4, construct_pg_minus_flat, construct_uniform_line, projective_geometry
from gfchordal.iso import canonical_form, detect_forbidden, find_isomorphism, is_isomorphic, is_projective_geometry
from gfchordal.matroid import Matroid, delete


def shuffled(M, seed):
    rng = random.Random(seed)
    order = list(range(M.n))
    rng.shuffle(order)
    return Matroid(M.field, M.rank, tuple(M.points[i] for i in order), tuple(f"x{i}" for i in range(M.n)))


@pytest.mark.parametrize("seed", range(5))
def test_invariant_under_relabel_and_reorder(fano, mk4, seed):
    for M in (fano, mk4, projective_geometry(3, make_field(3))):
        assert canonical_form(shuffled(M, seed)) == canonical_form(M)


def test_examples(fano, mk4, f2, f3, f4):
    assert canonical_form(delete(fano, ["e0"])) == canonical_form(mk4)
    hyper = construct_hyperoval(f4)
    assert canonical_form(mk4) != canonical_form(hyper)
    assert not is_isomorphic(mk4, hyper)
    assert is_isomorphic(construct_uniform_line(3, f2), construct_uniform_line(3, f3))
    assert is_isomorphic(construct_pg_minus_flat(3, 2, f2), mk4)


def test_projective_geometry(fano, mk4, f2):
    assert is_projective_geometry(fano) == 3
    assert is_projective_geometry(mk4) is None
    assert is_projective_geometry(projective_geometry(0, f2)) == 0


def test_detect_forbidden(mk4, fano, u23_ternary, u34, f4):
    assert detect_forbidden(mk4, 2) == "M(K4)"
    assert detect_forbidden(u34, 2) == "U(3,4)"
    assert detect_forbidden(u23_ternary, 3) == "U(2,3)"
    assert detect_forbidden(fano, 2) is None
    assert detect_forbidden(construct_hyperoval(f4), 4) == "U(3,6)"
    assert detect_forbidden(construct_uniform_line(5, f4), 4) is None


def test_too_large(f2):
    with pytest.raises(TooLargeError):
        canonical_form(projective_geometry(5, f2))


@pytest.mark.parametrize("q,r", [(2, 4), (3, 3)])
def test_canonical_form_matches_permutation_search(q, r):
    small = [M for M in corpus(make_field(q), r) if M.n <= 8]
    for i, M in enumerate(small):
        for N in small[i:]:
            same = canonical_form(M) == canonical_form(N)
            assert same == (find_isomorphism(M, N) is not None)
        assert find_isomorphism(M, shuffled(M, i)) is not None


def test_find_isomorphism_maps_circuits(mk4, fano):
    N = delete(fano, ["e6"])
    phi = find_isomorphism(mk4, N)
    image = {frozenset(phi[x] for x in c) for c in map(mk4.labels_of, mk4.circuit_masks)}
    assert image == {N.labels_of(c) for c in N.circuit_masks}
