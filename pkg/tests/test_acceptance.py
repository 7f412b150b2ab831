"""One test per acceptance criterion.

Each test appends (name, passed, note) to ``conftest.ACCEPTANCE``; the
terminal summary prints a PASS/FAIL line for every entry.  Run alone with
``pytest tests/test_acceptance.py -v``.
"""

import pytest

from conftest import ACCEPTANCE
from gfchordal.errors import OddCharacteristicError
from gfchordal.field import make_field
from gfchordal.geometry import construct_hyperoval
from gfchordal.verify import Context, find_arc, run_suite


@pytest.fixture(scope="module")
def ctx(tmp_path_factory):
    return Context(tmp_path_factory.mktemp("catalogs"), seed=0)


def record(name: str, ok: bool, note: str = "") -> None:
    ACCEPTANCE.append((name, ok, note))
    assert ok, f"{name}: {note}"


def _summary(rep) -> str:
    bad = len(rep.counterexamples)
    return f"instances={rep.instances} counterexamples={bad} time={rep.wall_time:.1f}s"


def test_binary_rank4_deciders_and_minimal_non_members(ctx):
    rep = run_suite("theorem3", ctx)
    ok = rep.passed and rep.details["minimal_non_members"] == ["M(K4)", "U(3,4)"]
    record("binary deciders agree, minimal non-members M(K4) U(3,4)", ok,
           f"{_summary(rep)} minimal={rep.details['minimal_non_members']}")


def test_ternary_rank3_deciders_and_minimal_non_members(ctx):
    rep = run_suite("theorem4", ctx, q=3)
    ok = (rep.passed and rep.details["minimal_non_members"] == ["U(2,3)"]
          and rep.details.get("abstract_minimal_non_members") == ["U(3,5)"])
    record("ternary deciders agree, minimal non-members U(2,3) U(3,5)", ok,
           f"{_summary(rep)} minimal={rep.details['minimal_non_members']}"
           f" abstract={rep.details.get('abstract_minimal_non_members')}")


def test_quaternary_rank3_sampled(ctx):
    rep = run_suite("theorem4", ctx, q=4, sample=10_000)
    hyper = rep.details["hyperoval"]
    ok = (rep.passed and rep.details["sampled_subsets"] >= 10_000
          and hyper["witness"]["target"] == "U(3,6)" and hyper["all_lines_two_point"])
    record("GF(4) sampled deciders agree, hyperoval non-member without forbidden line", ok,
           f"{_summary(rep)} orbits={rep.details['sampled_orbits']}/{rep.details['spanning_orbits_in_PG(2,4)']}")


def test_gpc_rank_identity(ctx):
    rep = run_suite("lemma1", ctx, count=100)
    record("GPC flat rank identity on 100 random constructions", rep.passed and rep.instances == 100,
           f"{_summary(rep)} glue_ranks={rep.details['glue_ranks']}")


def test_projective_contraction_classification(ctx):
    rep = run_suite("lemma6", ctx)
    record("all contractions projective iff PG minus flat", rep.passed, _summary(rep))


def test_pg_minus_flat_contains_mk4_or_u34(ctx):
    rep = run_suite("lemma7", ctx)
    record("PG minus flat has an M(K4) or U(3,4) flat", rep.passed, _summary(rep))


def test_nq_equals_rq(ctx):
    rep = run_suite("nq_equals_rq", ctx)
    record("minimal-divider class equals round-leaf GPC class", rep.passed,
           f"{_summary(rep)} in_both={rep.details['in_both']} in_neither={rep.details['in_neither']}")


def test_circuit_chordality(ctx):
    rep = run_suite("cfk", ctx)
    record("circuit-chordal iff no U(3,4) induced minor; binary members circuit-chordal", rep.passed,
           _summary(rep))


def test_closure_under_induced_minors(ctx):
    rep = run_suite("closure", ctx)
    record("members closed under flat restriction and contraction", rep.passed,
           f"{_summary(rep)} minors={rep.details['minors_checked']}")


def test_induced_minor_normal_form(ctx):
    rep = run_suite("normal_form", ctx, max_elements=9)
    record("induced-minor BFS equals contract-then-restrict forms", rep.passed, _summary(rep))


@pytest.mark.xfail(strict=True, reason="U(3,4) is a minimal binary non-member with a 2|2 vertical 2-separation")
def test_minimal_non_members_are_round(ctx):
    rep = run_suite("corollary1", ctx)
    non_round = sorted(k for k, v in rep.details["round"].items() if not v)
    record("every minimal non-member is round", rep.passed, f"{_summary(rep)} non_round={non_round}")


def test_hyperoval_parity():
    notes = []
    ok = True
    for q in (2, 4, 8):
        H = construct_hyperoval(make_field(q))
        good = H.n == q + 2 and H.rank == 3 and all(L.bit_count() == 2 for L in H.flats_by_rank[2])
        ok &= good
        notes.append(f"q={q}:{'arc' if good else 'bad'}")
    for q in (3, 5, 7, 9):
        try:
            construct_hyperoval(make_field(q))
            ok = False
            notes.append(f"q={q}:built")
        except OddCharacteristicError:
            notes.append(f"q={q}:odd")
    no5 = find_arc(3, 5) is None
    ok &= no5 and run_suite("bose").passed
    notes.append(f"5-arc in PG(2,3): {'none' if no5 else 'found'}")
    record("hyperovals exist exactly in even characteristic", ok, " ".join(notes))


def test_field_axioms():
    rep = run_suite("fields")
    record("field axioms for every supported order", rep.passed, _summary(rep))
