import pytest

from acss.ctm import build_table


@pytest.fixture(scope="session")
def k1_table():
    return build_table(1, 500)


@pytest.fixture(scope="session")
def k2_table():
    return build_table(2, 500)


@pytest.fixture(scope="session")
def k2_path(k2_table, tmp_path_factory):
    path = tmp_path_factory.mktemp("tables") / "k2.ctm"
    k2_table.save(path)
    return path


ACCEPTANCE = {}


def record(number, passed, detail):
    """Store one acceptance verdict; printed in the terminal summary."""
    ACCEPTANCE[number] = (passed, detail)
    print(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(
            f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
