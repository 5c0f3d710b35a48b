import pytest
from hypothesis import HealthCheck, settings

from qhodge.complex import WoronowiczComplex
from qhodge.exactfield import FieldSpec, make_field

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def gl():
    return make_field(FieldSpec.gl())


@pytest.fixture(scope="session")
def cx2(gl):
    """Full exterior algebra at N=2 over Q(q, z)."""
    return WoronowiczComplex(2, gl)


_VERDICTS = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    """Collects one PASS/FAIL line per acceptance criterion for the summary."""
    return request.config.stash.setdefault(_VERDICTS, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_VERDICTS, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
