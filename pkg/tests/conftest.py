"""Shared test configuration: deterministic property tests, visible criterion lines."""

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "deterministic",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("deterministic")


@pytest.fixture(scope="session")
def criterion_line(request):
    """Emit one acceptance line per criterion, bypassing output capture.

    pytest's terminal reporter writes to the original stdout, so these lines
    stay visible in the run log even for passing tests.
    """
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")

    def emit(criterion: str, ok: bool, detail: str) -> None:
        line = f"acceptance {criterion}: {'PASS' if ok else 'FAIL'} ({detail})"
        if reporter is not None:
            reporter.ensure_newline()
            reporter.write_line(line)
        else:  # pragma: no cover - plugin disabled
            print(line)

    return emit
