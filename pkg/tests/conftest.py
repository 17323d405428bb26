import json
import os

import pytest
from hypothesis import settings

from helpers import ACCEPTANCE, COUNTS

settings.register_profile("cdgacalc", max_examples=200, deadline=None, derandomize=True,
                          print_blob=True)
settings.load_profile("cdgacalc")


def pytest_configure(config):
    config.addinivalue_line("markers", "property: randomized property suite (seeded)")


def pytest_sessionfinish(session, exitstatus):
    path = os.environ.get("CDGACALC_PROPERTY_COUNTS")
    if path:
        with open(path, "w") as fh:
            json.dump(dict(COUNTS), fh, indent=1, sort_keys=True)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
