"""Command-line interface: every command prints one JSON document on stdout.

Exit codes: 0 when the computation finished (whatever the membership
answer), 1 when a requested verification suite failed, 2 for malformed
input or violated preconditions, 3 when a size bound is exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import document
from .chordal import cfk_chordal, is_gfq_chordal, is_nq
from .enumeration import enumerate_matroids
from .errors import GfChordalError, MalformedDocumentError, PreconditionError, TooLargeError
from .field import make_field
from .geometry import construct_hyperoval, construct_mk4, construct_pg_minus_flat, construct_uniform_line, projective_geometry
from .gpc import GpcSpec, gpc
from .iso import is_isomorphic
from .matroid import Matroid
from .structure import dividers, is_round, minimal_dividers
from .verify import SUITES, Context, run_suite


MAX_ANALYZE_ELEMENTS = 24


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> Matroid:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise MalformedDocumentError(f"cannot read {path}: {exc.strerror}") from None
    return document.loads(text)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def cmd_construct(args) -> int:
    name, params = args.name, args.params
    need = {"pg": 2, "uniform-line": 2, "hyperoval": 1, "pg-minus-flat": 3, "mk4": 0}
    if len(params) != need[name]:
        raise PreconditionError(f"construct {name} takes {need[name]} integer parameters")
    if name == "pg":
        M = projective_geometry(params[0], make_field(params[1]))
    elif name == "uniform-line":
        M = construct_uniform_line(params[0], make_field(params[1]))
    elif name == "hyperoval":
        M = construct_hyperoval(make_field(params[0]))
    elif name == "pg-minus-flat":
        M = construct_pg_minus_flat(params[0], params[1], make_field(params[2]))
    else:
        M = construct_mk4()
    _emit(document.to_document(M))
    return 0


def _parse_glue(text: str) -> tuple[tuple[str, str], ...]:
    pairs = []
    for item in filter(None, (t.strip() for t in text.split(","))):
        a, sep, b = item.partition(":")
        if not sep or not a or not b:
            raise MalformedDocumentError(f"glue pair {item!r} is not of the form a:b")
        pairs.append((a, b))
    return tuple(pairs)


def cmd_gpc(args) -> int:
    m1, m2 = _read(args.file1), _read(args.file2)
    P = gpc(GpcSpec(m1, m2, _parse_glue(args.glue)))
    _emit(document.to_document(P))
    return 0


def cmd_analyze(args) -> int:
    M = _read(args.file)
    if M.n > MAX_ANALYZE_ELEMENTS:
        raise TooLargeError(f"analyze is bounded to {MAX_ANALYZE_ELEMENTS} elements, got {M.n}")
    _emit({
        "rank": M.rank,
        "flats_by_rank": [len(level) for level in M.flats_by_rank],
        "circuits": [M.sorted_labels(c) for c in M.circuit_masks],
        "round": is_round(M),
        "dividers": [d.to_json() for d in dividers(M)],
        "minimal_dividers": [d.to_json() for d in minimal_dividers(M)],
    })
    return 0


def cmd_chordal(args) -> int:
    M = _read(args.file)
    if args.q_override is not None:
        try:
            N = Matroid(make_field(args.q_override), M.rank, M.points, M.labels)
        except GfChordalError as exc:
            raise MalformedDocumentError(f"points are not a GF({args.q_override}) representation: {exc}") from None
        if not is_isomorphic(M, N):
            raise MalformedDocumentError(f"over GF({args.q_override}) these points give a different matroid")
        M = N
    member, cert = is_gfq_chordal(M)
    _emit({"member": member, "certificate": cert.to_json() if cert else None})
    return 0


def cmd_nq(args) -> int:
    member, cert = is_nq(_read(args.file))
    _emit({"member": member, "certificate": cert.to_json() if cert else None})
    return 0


def cmd_cfk(args) -> int:
    _emit({"chordal": cfk_chordal(_read(args.file))})
    return 0


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if any(n not in SUITES for n in names):
        raise UsageError(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)} or 'all'")
    ctx = Context(Path(args.catalog) if args.catalog else None, args.seed)
    reports = []
    for name in names:
        kw = {}
        if name == "theorem4":
            kw["q"] = args.q
            if args.sample is not None:
                kw["sample"] = args.sample
            kw["exhaustive"] = args.exhaustive
        reports.append(run_suite(name, ctx, **kw).to_json())
    _emit(reports[0] if len(reports) == 1 else reports)
    return 0 if all(r["pass"] for r in reports) else 1


def cmd_enumerate(args) -> int:
    cat = enumerate_matroids(args.r, make_field(args.q), not args.all_subsets)
    if args.out:
        cat.save(args.out)
        _emit({"path": args.out, "q": cat.q, "r": cat.r, "group_order": cat.group_order,
               "orbits": len(cat.entries), "checksum": cat.checksum})
    else:
        _emit({"q": cat.q, "r": cat.r, "group_order": cat.group_order, "checksum": cat.checksum,
               "orbits": [{"mask": e.mask, "orbit_size": e.orbit_size, "spanning": e.spanning,
                           "matroid": document.to_document(e.matroid)} for e in cat.entries]})
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gfchordal", description="GF(q)-chordal matroids: construction, decision and verification")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("construct", help="build a named matroid")
    c.add_argument("name", choices=["pg", "uniform-line", "hyperoval", "pg-minus-flat", "mk4"])
    c.add_argument("params", nargs="*", type=int,
                   help="pg R Q | uniform-line K Q | hyperoval Q | pg-minus-flat R I Q | mk4")
    c.set_defaults(func=cmd_construct)

    g = sub.add_parser("gpc", help="generalized parallel connection of two documents")
    g.add_argument("file1")
    g.add_argument("file2")
    g.add_argument("--glue", default="", help="comma-separated a:b pairs, a in file1 and b in file2")
    g.set_defaults(func=cmd_gpc)

    a = sub.add_parser("analyze", help="flats, circuits, roundness and dividers")
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    ch = sub.add_parser("chordal", help="decide GF(q)-chordality with a certificate")
    ch.add_argument("file")
    ch.add_argument("--q-override", type=int, default=None, metavar="Q",
                    help="read the point encodings over GF(Q) instead")
    ch.set_defaults(func=cmd_chordal)

    n = sub.add_parser("nq", help="decide N_q membership")
    n.add_argument("file")
    n.set_defaults(func=cmd_nq)

    f = sub.add_parser("cfk", help="circuit-chordality")
    f.add_argument("file")
    f.set_defaults(func=cmd_cfk)

    v = sub.add_parser("verify", help="run a verification suite (or 'all')")
    v.add_argument("suite")
    v.add_argument("--catalog", default=None, help="directory caching enumeration catalogs")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--q", type=int, default=3, help="field order for theorem4 (3 or 4)")
    v.add_argument("--sample", type=int, default=None, help="sampled subsets for theorem4 with q=4")
    v.add_argument("--exhaustive", action="store_true", help="theorem4 with q=4 over every orbit instead of a sample")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("enumerate", help="orbit catalog of point subsets of PG(r-1,q)")
    e.add_argument("r", type=int)
    e.add_argument("q", type=int)
    e.add_argument("--out", default=None, help="write a JSON-lines catalog here")
    e.add_argument("--all-subsets", action="store_true", help="keep non-spanning orbits too")
    e.set_defaults(func=cmd_enumerate)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        code = "unknown-subcommand" if str(exc).startswith("argument command") else "usage"
        _emit({"error": code, "message": str(exc)})
        return 2
    try:
        return args.func(args)
    except TooLargeError as exc:
        _emit({"error": exc.code, "message": str(exc)})
        return 3
    except (GfChordalError, UsageError) as exc:
        _emit({"error": getattr(exc, "code", "usage"), "message": str(exc)})
        return 2


if __name__ == "__main__":
    sys.exit(main())
