import pytest

from gfchordal.document import dumps, from_document, loads, to_document
from gfchordal.enumeration import corpus
from gfchordal.errors import MalformedDocumentError, UnsupportedOrderError
from gfchordal.field import make_field
from gfchordal.iso import is_isomorphic


@pytest.mark.parametrize("q,r", [(2, 4), (3, 3)])
def test_roundtrip(q, r):
    for M in corpus(make_field(q), r):
        N = loads(dumps(M))
        assert N == M and N.labels == M.labels and is_isomorphic(M, N)


def test_default_labels():
    M = from_document({"q": 2, "rank": 2, "points": [[0, 1], [1, 0]]})
    assert M.labels == ("e0", "e1")


@pytest.mark.parametrize("doc", [
    [],
    {"q": 2, "rank": 2},
    {"q": 2, "rank": 2, "points": [[0, 1], [0, 1]]},
    {"q": 2, "rank": 2, "points": [[0, 1], [1, 2]]},
    {"q": 3, "rank": 2, "points": [[2, 1], [0, 1]]},
    {"q": 2, "rank": 2, "points": [[0, 1]], "labels": ["a", "b"]},
    {"q": "2", "rank": 2, "points": []},
])
def test_malformed(doc):
    with pytest.raises(MalformedDocumentError):
        from_document(doc)


def test_bad_json_and_order():
    with pytest.raises(MalformedDocumentError):
        loads("{nope")
    with pytest.raises(UnsupportedOrderError):
        from_document({"q": 6, "rank": 1, "points": [[1]]})
