import pytest

from ddqsl import PulseSchedule, SpectralParams

WEAK = SpectralParams(0.2, 1.0)
STRONG = SpectralParams(5.0, 1.0)
TAU = 10.0

# the six parameter sets shared by the multiqubit and identity checks
PARAM_SETS = [
    (WEAK, PulseSchedule(TAU, 0)),
    (WEAK, PulseSchedule(TAU, 5)),
    (WEAK, PulseSchedule(TAU, 20)),
    (STRONG, PulseSchedule(TAU, 0)),
    (STRONG, PulseSchedule(TAU, 10)),
    (SpectralParams(0.5, 1.0), PulseSchedule(TAU, 3)),
]


@pytest.fixture
def weak():
    return WEAK


@pytest.fixture
def strong():
    return STRONG


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(RESULTS, key=lambda k: int(k.split()[0][2:])):
        ok, detail = RESULTS[name]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
