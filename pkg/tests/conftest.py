import pytest

from nahmalg.liealg import catalog
from nahmalg.nahm import NahmAlgebra

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(number: int, passed: bool, detail: str) -> None:
    ACCEPTANCE[number] = (passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def so3():
    return catalog("so3")


@pytest.fixture(scope="session")
def A_so3(so3):
    return NahmAlgebra(so3)


@pytest.fixture(scope="session")
def A_sl2():
    return NahmAlgebra(catalog("sl2"))


@pytest.fixture(scope="session")
def E(A_so3):
    return A_so3.element([1, 0, 0, 0, 1, 0, 0, 0, 1])
