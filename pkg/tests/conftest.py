import pytest

from thermolen.eos import VirialEos

R = 8.314


@pytest.fixture
def ideal():
    return VirialEos.ideal(R)


# (label, eos) pairs that are stable on v >= 0.012 at every test temperature
TEST_EOS = [
    ("ideal", VirialEos.ideal(R)),
    ("quasi_ideal_1e-5", VirialEos.quasi_ideal(1e-5, R)),
    ("quasi_ideal_3e-5", VirialEos.quasi_ideal(3e-5, R)),
    ("virial2_neg", VirialEos.virial([-1e-4], R, coeff_dT=[5e-7])),
    ("virial2_pos", VirialEos.virial([1e-4], R, coeff_dT=[-2e-7])),
    ("virial3", VirialEos.virial([-1e-4, 2e-8], R, coeff_dT=[5e-7, -1e-10])),
    ("virial3_wide", VirialEos.virial([-2e-4, 5e-9], R, coeff_dT=[8e-7, 0.0])),
]


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one pass/fail line per acceptance criterion for the terminal summary."""
    name = request.node.name

    class Recorder:
        def __init__(self):
            self.failures = []
            self.checked = 0

        def check(self, ok, what):
            self.checked += 1
            if not ok:
                self.failures.append(what)

        def finish(self, title):
            verdict = "PASS" if not self.failures else "FAIL"
            line = f"{verdict}  {title}  ({self.checked} checks"
            line += f", {len(self.failures)} failed: {self.failures[:3]})" if self.failures else ")"
            ACCEPTANCE_LINES.append(line)
            assert not self.failures, "; ".join(self.failures[:10])

    return Recorder()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
