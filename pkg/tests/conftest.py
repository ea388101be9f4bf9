import mpmath as mp
import pytest

from mechnet import units


@pytest.fixture
def hp():
    """mpmath context at 50 digits for extended-precision oracles."""
    with mp.workdps(50):
        yield mp


def mp_constants():
    c = units.PHYSICAL
    return mp.mpf(c.hbar), mp.mpf(c.k_boltzmann), mp.mpf(c.speed_of_light)


ACCEPTANCE = []


def record_criterion(number, ok, detail):
    """Log one acceptance line for the terminal summary, then assert it."""
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE.append((number, line))
    print(line)
    assert ok, line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for _, line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
