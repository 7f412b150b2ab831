import pytest

from gfchordal.enumeration import corpus
from gfchordal.errors import TooLargeError, UnknownLabelError
from gfchordal.field import make_field
from gfchordal.geometry import construct_uniform_line, projective_geometry
from gfchordal.gpc import GpcSpec, gpc
from gfchordal.iso import is_projective_geometry
from gfchordal.matroid import direct_sum, flats
from gfchordal.structure import (
    dividers,
    has_vertical_separation,
    is_round,
    local_connectivity,
    minimal_dividers,
    minimal_splits,
    vertical_separations,
)

TRIANGLE = ("12", "13", "23")


@pytest.fixture(scope="module")
def double_mk4(mk4):
    other = mk4.relabel([lab + "'" for lab in mk4.labels])
    return gpc(GpcSpec(mk4, other, tuple((a, a + "'") for a in TRIANGLE)))


def check_report(M, rep):
    x, y = M.mask_of(rep.X), M.mask_of(rep.Y)
    assert x | y == M.full and not x & y and x and y
    rx, ry = M.rank_of(x), M.rank_of(y)
    lam = rx + ry - M.rank
    assert lam <= rep.k - 1 and min(rx, ry) >= rep.k
    assert rep.exact == (lam == rep.k - 1)
    assert rep.local_conn == lam
    assert M.mask_of(rep.intersection_flat) == M.closure_of(x) & M.closure_of(y)
    assert min(M.labels) in rep.X


def test_local_connectivity(fano, mk4, double_mk4):
    l1, l2 = flats(fano, 2)[:2]
    assert local_connectivity(fano, l1, l2) == 1
    assert local_connectivity(fano, l1, []) == 0
    right = [lab for lab in double_mk4.labels if lab not in mk4.ground]
    assert local_connectivity(double_mk4, mk4.labels, right) == 2
    with pytest.raises(UnknownLabelError):
        local_connectivity(fano, ["nope"], [])


def test_dividers_examples(u34, fano, double_mk4):
    ds = dividers(u34)
    assert len(ds) == 3
    for d in ds:
        check_report(u34, d)
        assert d.k == 2 and d.exact and d.intersection_flat == frozenset() and len(d.X) == 2
    assert dividers(fano) == []
    ds = dividers(double_mk4)
    assert ds and all(d.k == 3 and d.intersection_flat == set(TRIANGLE) for d in ds)


def test_minimal_dividers(u34, double_mk4, f2):
    assert minimal_dividers(u34) == dividers(u34)
    md = minimal_dividers(double_mk4)
    assert md and all(d.intersection_flat == set(TRIANGLE) for d in md)
    L = construct_uniform_line(3, f2)
    S = direct_sum(L, L.relabel(["a", "b", "c"]))
    md = minimal_dividers(S)
    assert [(d.X, d.Y) for d in md] == [(frozenset({"a", "b", "c"}), frozenset(L.labels))]
    assert md[0].intersection_flat == frozenset()


def test_round(fano, mk4, f2):
    assert is_round(fano) and is_round(mk4)
    assert not is_round(construct_uniform_line(2, f2))


def test_too_large(f2):
    with pytest.raises(TooLargeError):
        dividers(projective_geometry(5, f2))


@pytest.mark.parametrize("q,r", [(2, 4), (3, 3)])
def test_reports_and_three_way_roundness(q, r):
    for M in corpus(make_field(q), r):
        ds = dividers(M)
        for d in ds:
            check_report(M, d)
        if M.n <= 10:
            assert is_round(M) == (not ds) == (not has_vertical_separation(M))
        for k in range(1, M.rank + 1):
            for rep in vertical_separations(M, k):
                check_report(M, rep)


@pytest.mark.parametrize("q,r", [(2, 4), (3, 3)])
def test_minimality_pools_and_fast_splits_agree(q, r):
    for M in corpus(make_field(q), r):
        a = minimal_dividers(M, "all")
        assert a == minimal_dividers(M, "dividers")
        fast = {I for I, _, _ in minimal_splits(M)}
        assert fast == {M.mask_of(d.intersection_flat) for d in a}


@pytest.mark.parametrize("q,r", [(2, 4), (3, 3)])
def test_round_members_are_projective_and_contractions_round(q, r):
    from gfchordal.chordal import is_gfq_chordal

    for M in corpus(make_field(q), r):
        if is_round(M):
            for e in range(M.n):
                assert is_round(M.contract(1 << e))
            if is_gfq_chordal(M)[0]:
                assert is_projective_geometry(M) is not None


def test_bad_pool(fano):
    with pytest.raises(ValueError):
        minimal_dividers(fano, "some")
