import numpy as np
import pytest

from gfchordal.enumeration import (
    OrbitCatalog,
    catalog,
    corpus,
    enumerate_matroids,
    group_elements,
    min_image,
    orbit_images,
    sample_orbits,
)
from gfchordal.errors import MalformedDocumentError, TooLargeError
from gfchordal.field import make_field
from gfchordal.iso import canonical_form
from gfchordal.projective import ambient, count_points


@pytest.mark.parametrize("r,q,order", [(2, 2, 6), (3, 2, 168), (4, 2, 20160), (3, 3, 5616), (2, 4, 120)])
def test_group_orders(r, q, order):
    g = group_elements(r, make_field(q))
    assert g.shape == (order, count_points(r, q))
    # each row is a permutation and the rows are distinct
    assert (np.sort(g, axis=1) == np.arange(g.shape[1])).all()
    assert len(np.unique(g, axis=0)) == order


def test_group_preserves_lines():
    f = make_field(4)
    g = group_elements(3, f)
    amb = ambient(3, f)
    lines = {amb.line(a, b) for a in range(len(amb)) for b in range(a + 1, len(amb))}
    for row in g[:: max(1, len(g) // 50)]:
        for L in lines:
            image = sum(1 << int(row[i]) for i in range(len(row)) if L >> i & 1)
            assert amb.span_rank(amb.span_of([i for i in range(len(row)) if image >> i & 1])) == 2


def test_group_bounds():
    with pytest.raises(TooLargeError):
        group_elements(5, make_field(2))
    with pytest.raises(TooLargeError):
        group_elements(3, make_field(5))


def test_line_catalog():
    cat = enumerate_matroids(2, make_field(2), True)
    assert sorted(e.matroid.n for e in cat.entries) == [2, 3]


@pytest.mark.parametrize("r,q", [(3, 2), (4, 2), (3, 3), (2, 4)])
def test_orbit_sizes_partition_power_set(r, q):
    cat = enumerate_matroids(r, make_field(q), False)
    npts = count_points(r, q)
    assert sum(e.orbit_size for e in cat.entries) == 2**npts
    perms = group_elements(r, make_field(q))
    for e in cat.entries:
        assert min_image(perms, e.mask) == e.mask
        assert len(np.unique(orbit_images(perms, e.mask))) == e.orbit_size
        assert e.spanning == (e.matroid.rank == r)


def test_ternary_plane_catalog():
    cat = enumerate_matroids(3, make_field(3), True)
    assert cat.group_order == 5616 and all(e.spanning for e in cat.entries)


def test_binary_representatives_are_pairwise_non_isomorphic():
    # binary matroids are uniquely representable: orbits and isomorphism classes coincide
    cat = enumerate_matroids(4, make_field(2), True)
    forms = [canonical_form(e.matroid) for e in cat.entries]
    assert len(set(forms)) == len(forms)


def test_catalog_roundtrip(tmp_path):
    f = make_field(3)
    first = catalog(3, f, tmp_path)
    path = tmp_path / "catalog_r3_q3.jsonl"
    assert path.exists()
    again = catalog(3, f, tmp_path)
    assert [e.mask for e in again.entries] == [e.mask for e in first.entries]
    assert [e.matroid for e in again.entries] == [e.matroid for e in first.entries]
    lines = path.read_text().splitlines()
    lines[0] = lines[0].replace(first.checksum, "0" * 64)
    path.write_text("\n".join(lines))
    with pytest.raises(MalformedDocumentError):
        OrbitCatalog.load(path)


def test_corpus_sizes():
    assert len(corpus(make_field(2), 4)) == 46
    assert len(corpus(make_field(3), 3)) == 30


def test_sampling_is_seeded():
    f = make_field(4)
    a = sample_orbits(3, f, 200, seed=3)
    b = sample_orbits(3, f, 200, seed=3)
    assert [e.mask for e in a] == [e.mask for e in b]
    full = {e.mask for e in enumerate_matroids(3, f, True).entries}
    assert {e.mask for e in a} <= full
