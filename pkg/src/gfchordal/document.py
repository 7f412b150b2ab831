"""JSON encoding of matroids: {"q", "rank", "points", "labels"}."""

from __future__ import annotations

import json
from typing import Any

from .errors import GfChordalError, MalformedDocumentError
from .field import make_field
from .matroid import Matroid


def to_document(M: Matroid) -> dict:
    return {"q": M.q, "rank": M.rank, "points": [list(p) for p in M.points], "labels": list(M.labels)}


def from_document(doc: Any) -> Matroid:
    if not isinstance(doc, dict):
        raise MalformedDocumentError("a matroid document must be a JSON object")
    try:
        q, rank, points = doc["q"], doc["rank"], doc["points"]
    except KeyError as exc:
        raise MalformedDocumentError(f"missing field {exc.args[0]!r}") from None
    if not isinstance(q, int) or not isinstance(rank, int) or not isinstance(points, list):
        raise MalformedDocumentError("q and rank must be integers and points a list")
    labels = doc.get("labels") or [f"e{i}" for i in range(len(points))]
    if not isinstance(labels, list) or len(labels) != len(points):
        raise MalformedDocumentError("labels must be a list matching points")
    try:
        f = make_field(q)
        pts = tuple(tuple(int(c) for c in p) for p in points)
        return Matroid(f, rank, pts, tuple(str(lab) for lab in labels))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, GfChordalError) and exc.code != "precondition-violation":
            raise
        raise MalformedDocumentError(str(exc)) from None


def loads(text: str) -> Matroid:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocumentError(f"invalid JSON: {exc}") from None
    return from_document(doc)


def dumps(M: Matroid) -> str:
    return json.dumps(to_document(M), sort_keys=True)
