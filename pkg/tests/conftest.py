import os

import pytest

from artifact.named import named_bubbles

DATA = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "examples_data")

_OUTCOMES: dict[int, list[str]] = {}


@pytest.fixture(scope="session")
def named():
    return named_bubbles()


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _OUTCOMES.setdefault(marker.args[0], []).append(rep.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_OUTCOMES):
        outs = _OUTCOMES[n]
        verdict = "PASS" if all(o == "passed" for o in outs) else "FAIL"
        failed = sum(o != "passed" for o in outs)
        detail = f" ({failed} of {len(outs)} checks failed)" if failed else f" ({len(outs)} checks)"
        terminalreporter.write_line(f"criterion {n:2d}: {verdict}{detail}")
