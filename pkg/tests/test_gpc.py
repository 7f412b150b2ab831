import random

import pytest

from gfchordal.errors import NotAFlatError, PreconditionError
from gfchordal.field import make_field
from gfchordal.geometry import projective_geometry
from gfchordal.gpc import GpcSpec, gpc, is_modular_flat, is_modular_flat_mask, verify_flats_definition
from gfchordal.iso import is_isomorphic, is_projective_geometry
from gfchordal.matroid import flats

TRIANGLE = ("12", "13", "23")


def primed(M, tag="'"):
    return M.relabel([lab + tag for lab in M.labels])


def test_modular_flats(mk4):
    assert is_modular_flat(mk4, TRIANGLE)
    assert not is_modular_flat(mk4, ["12", "34"])
    for p in mk4.labels:
        assert is_modular_flat(mk4, [p])
    with pytest.raises(NotAFlatError):
        is_modular_flat(mk4, ["12", "13"])


@pytest.mark.parametrize("q", [2, 3, 4])
def test_projective_flats_are_modular(q):
    f = make_field(q)
    P = projective_geometry(3, f)
    M = P.submatroid(P.full & ~1)  # one point deleted
    for F in M.all_flats:
        if is_projective_geometry(M.submatroid(F)) is not None:
            assert is_modular_flat_mask(M, F)


def test_mk4_glued_on_triangle(mk4):
    spec = GpcSpec(mk4, primed(mk4), tuple((a, a + "'") for a in TRIANGLE))
    P = gpc(spec)
    assert (P.n, P.rank) == (9, 4)
    assert verify_flats_definition(P, spec)
    assert is_isomorphic(P.submatroid(P.mask_of(mk4.labels)), mk4)
    assert is_modular_flat(P, mk4.labels)


def test_fano_glued_on_line(fano):
    line = sorted(flats(fano, 2)[0])
    spec = GpcSpec(fano, primed(fano), tuple((a, a + "'") for a in line))
    P = gpc(spec)
    assert (P.n, P.rank) == (11, 4)
    check = verify_flats_definition(P, spec)
    assert check and check.flats_checked == len(P.all_flats)


def test_direct_sum(fano, mk4):
    spec = GpcSpec(fano, primed(mk4))
    P = gpc(spec)
    assert P.rank == 6 and P.n == 13
    check = verify_flats_definition(P, spec)
    assert check and set(check.glue_ranks) == {0}


def test_semilinear_glue():
    # a random bijection of two lines of PG(2,4) needs a field automorphism
    f4 = make_field(4)
    P = projective_geometry(3, f4)
    Q = primed(P)
    line = sorted(flats(P, 2)[0])
    for seed in range(4):
        img = [lab + "'" for lab in line]
        random.Random(seed).shuffle(img)
        spec = GpcSpec(P, Q, tuple(zip(line, img)))
        G = gpc(spec)
        assert (G.n, G.rank) == (37, 4)
        assert verify_flats_definition(G, spec)


def test_preconditions(mk4, fano):
    with pytest.raises(PreconditionError):
        gpc(GpcSpec(mk4, primed(mk4), (("12", "12'"), ("34", "34'"))))  # not modular
    with pytest.raises(PreconditionError):
        gpc(GpcSpec(mk4, mk4))  # labels clash
    line = sorted(flats(fano, 2)[0])
    with pytest.raises(PreconditionError):
        # the two restrictions are not isomorphic: a 3-point line against a 2-point line
        gpc(GpcSpec(fano, primed(mk4), tuple(zip(line, ["12'", "34'", "13'"]))))
    with pytest.raises(PreconditionError):
        gpc(GpcSpec(fano, primed(projective_geometry(3, make_field(3)))))
