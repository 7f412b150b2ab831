import pytest

from gfchordal.field import make_field
from gfchordal.verify import SUITES, Context, find_arc, run_suite


@pytest.fixture(scope="module")
def ctx():
    return Context(seed=0)


@pytest.mark.parametrize("name", ["fields", "bose", "lemma6", "lemma7", "theorem3", "cfk", "closure",
                                  "normal_form", "nq_equals_rq", "lemmas_misc"])
def test_suite_passes(ctx, name):
    rep = run_suite(name, ctx)
    assert rep.passed, rep.counterexamples[:2]
    assert rep.instances > 0
    js = rep.to_json()
    assert js["pass"] is True and js["suite"] == name


def test_theorem3_minimal_set(ctx):
    rep = run_suite("theorem3", ctx)
    assert rep.details["minimal_non_members"] == ["M(K4)", "U(3,4)"]


def test_theorem4_ternary(ctx):
    rep = run_suite("theorem4", ctx, q=3)
    assert rep.passed
    assert rep.details["minimal_non_members"] == ["U(2,3)"]
    assert rep.details["abstract_minimal_non_members"] == ["U(3,5)"]


def test_theorem4_quaternary_small_sample(ctx):
    rep = run_suite("theorem4", ctx, q=4, sample=300)
    assert rep.passed
    assert rep.details["U(3,5) over GF(4)"]["member"] is False


def test_lemma1_small(ctx):
    a = run_suite("lemma1", ctx, count=15)
    b = run_suite("lemma1", Context(seed=0), count=15)
    assert a.passed and a.instances == 15
    assert a.details == b.details


def test_lemma9_only_fails_off_minimal_dividers(ctx):
    rep = run_suite("lemma9", ctx)
    assert not rep.passed
    assert rep.details["minimal_only_failures"] == 0


def test_corollary1_reports_u34(ctx):
    rep = run_suite("corollary1", ctx)
    assert len(rep.counterexamples) == 1
    bad = rep.counterexamples[0]
    assert len(bad["matroid"]["points"]) == 4 and bad["matroid"]["rank"] == 3
    assert bad["certificate"]["k"] == 2


def test_arc_search():
    assert find_arc(3, 5) is None
    assert find_arc(3, 4) is not None
    assert find_arc(4, 6) is not None


def test_failure_report_shape():
    from gfchordal.verify import SuiteReport

    rep = SuiteReport("x")
    assert rep.passed
    rep.fail(None, 1, 2)
    assert not rep.passed and rep.to_json()["counterexamples"][0] == {
        "matroid": None, "expected": 1, "got": 2, "certificate": None}


def test_all_suites_registered():
    assert {"theorem3", "theorem4", "lemma1", "lemma6", "lemma7", "lemma9", "corollary1", "nq_equals_rq",
            "lemmas_misc", "cfk", "closure", "normal_form", "bose", "fields"} == set(SUITES)
