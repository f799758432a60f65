import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")

DESK_TYPES = ["C~2", "C~3", "G~2", "B~3", "D~4", "F~4"]
SMALL_TYPES = ["C~2", "G~2", "B~3"]


@pytest.fixture(params=SMALL_TYPES)
def small_type(request):
    return request.param


@pytest.fixture(params=DESK_TYPES)
def desk_type(request):
    return request.param


# criterion number -> one-line verdict, filled by test_acceptance
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
