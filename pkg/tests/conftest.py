import pytest

from gfchordal.field import make_field
from gfchordal.geometry import construct_mk4, construct_uniform_line, projective_geometry
from gfchordal.matroid import Matroid

ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture(scope="session")
def f2():
    return make_field(2)


@pytest.fixture(scope="session")
def f3():
    return make_field(3)


@pytest.fixture(scope="session")
def f4():
    return make_field(4)


@pytest.fixture(scope="session")
def fano(f2):
    return projective_geometry(3, f2)


@pytest.fixture(scope="session")
def mk4():
    return construct_mk4()


@pytest.fixture(scope="session")
def u34(f2):
    return Matroid.from_vectors(f2, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])


@pytest.fixture(scope="session")
def u23_ternary(f3):
    return construct_uniform_line(3, f3)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, note in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {note}")
