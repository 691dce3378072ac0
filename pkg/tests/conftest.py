import os

import pytest

from robustpir.field import PrimeField
from robustpir.pir import setup_scheme
from robustpir.storage import random_database


def pytest_collection_modifyitems(config, items):
    if os.environ.get("ROBUSTPIR_FULL_SWEEP"):
        return
    skip = pytest.mark.skip(reason="set ROBUSTPIR_FULL_SWEEP=1 to run")
    for item in items:
        if "full_sweep" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def F17():
    return PrimeField(17)


@pytest.fixture(scope="session")
def example1(F17):
    """n=13, k=2, t=3, b=2, r=1 over GF(17) with alpha=(1..13), v=w=1."""
    return setup_scheme(F17, 13, 2, 3, 2, 1)


@pytest.fixture(scope="session")
def example1_db(F17, example1):
    return random_database(F17, 3, example1.params.nu, example1.params.k, 2024)


acceptance_key = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    return request.config.stash.setdefault(acceptance_key, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(acceptance_key, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
