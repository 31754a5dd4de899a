import pytest

from morava_powops.rings import load_presentation

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def h1():
    return load_presentation("height1.pres")


@pytest.fixture(scope="session")
def h2():
    return load_presentation("height2.pres")


@pytest.fixture(scope="session")
def h2_wide():
    # wide enough that sums and products in the property tests never wrap
    return load_presentation("height2.pres", N=16, K=8)


@pytest.fixture
def record():
    def _record(number, title, ok, detail=""):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
