import os

import pytest


def have_external_solver() -> bool:
    return bool(os.environ.get("CUBEVIS_SAT_SOLVER"))


extended = pytest.mark.extended


def pytest_collection_modifyitems(config, items):
    if config.getoption("-m", default=""):
        return
    skip = pytest.mark.skip(reason="extended: needs an external SAT solver and time")
    for item in items:
        if "extended" in item.keywords and not have_external_solver():
            item.add_marker(skip)
