"""Projective geometries and the named small matroids used throughout."""

from __future__ import annotations

from .errors import IndexOutOfRangeError, OddCharacteristicError, PreconditionError, TooManyPointsError
from .field import FieldSpec, make_field
from .matroid import Matroid
from .projective import count_points, pg_points

__all__ = [
    "pg_points",
    "projective_geometry",
    "construct_uniform_line",
    "construct_hyperoval",
    "construct_pg_minus_flat",
    "construct_mk4",
]


def _default_labels(n: int) -> tuple[str, ...]:
    return tuple(f"e{i}" for i in range(n))


def projective_geometry(r: int, field: FieldSpec) -> Matroid:
    """P_r = PG(r-1, q); P_0 is the empty matroid."""
    pts = tuple(pg_points(r, field))
    return Matroid(field, r if pts else 0, pts, _default_labels(len(pts)))


def construct_uniform_line(k: int, field: FieldSpec) -> Matroid:
    """U_{2,k} as the first k points of PG(1, q)."""
    if k > field.q + 1:
        raise TooManyPointsError(f"a line of PG(1,{field.q}) has only {field.q + 1} points")
    if k < 2:
        raise PreconditionError("a rank-2 line needs at least 2 points")
    pts = tuple(pg_points(2, field)[:k])
    return Matroid(field, 2, pts, _default_labels(k))


def construct_hyperoval(field: FieldSpec) -> Matroid:
    """The (q+2)-arc {(1,t,t^2)} + {(0,1,0), (0,0,1)} for even q."""
    if field.p != 2:
        raise OddCharacteristicError(f"no (q+2)-arc exists in PG(2,{field.q}) for odd q")
    pts = [(1, t, field.mul(t, t)) for t in range(field.q)]
    pts += [(0, 1, 0), (0, 0, 1)]
    pts.sort()
    return Matroid(field, 3, tuple(pts), _default_labels(len(pts)))


def construct_pg_minus_flat(r: int, i: int, field: FieldSpec) -> Matroid:
    """P_r minus a rank-(r-i) coordinate flat.

    The deleted flat is spanned by the last r-i unit vectors, so the points
    kept are those with a nonzero entry among the first i coordinates.
    ``i = r`` deletes nothing and gives P_r itself.
    """
    if not 1 <= i <= r:
        raise IndexOutOfRangeError(f"need 1 <= i <= r for a rank-{r} result, got i={i}")
    pts = tuple(p for p in pg_points(r, field) if any(p[:i]))
    assert len(pts) == (field.q**r - field.q ** (r - i)) // (field.q - 1)
    return Matroid(field, r, pts, _default_labels(len(pts)))


MK4_COLUMNS = {
    "14": (1, 0, 0),
    "24": (0, 1, 0),
    "34": (0, 0, 1),
    "12": (1, 1, 0),
    "13": (1, 0, 1),
    "23": (0, 1, 1),
}


def construct_mk4() -> Matroid:
    """The cycle matroid of K_4 over GF(2); edge ij has column e_i + e_j (e_4 = 0)."""
    labels = tuple(MK4_COLUMNS)
    return Matroid(make_field(2), 3, tuple(MK4_COLUMNS[lab] for lab in labels), labels)


def pg_size(r: int, q: int) -> int:
    return count_points(r, q)
