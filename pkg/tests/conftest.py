import time
from importlib import resources

import pytest

from blamelogic import load

SESSION_T0 = time.monotonic()

# The one-agent rescue scenario used throughout the docs, in a deliberately
# non-canonical layout so save() has something to normalize.
LOPEZ_DOC = (
    b'{"agents": ["lopez"], "actions": ["hide","expose"], "outcomes": ["alive","dead"],'
    b' "plays": [{"profile": {"lopez":"hide"}, "outcome":"alive"},'
    b' {"profile": {"lopez":"expose"}, "outcome":"alive"},'
    b' {"profile": {"lopez":"expose"}, "outcome":"dead"}],'
    b' "valuation": {"dead": [2]}}'
)


def canonical_lopez_bytes():
    return resources.files("blamelogic").joinpath("data/lopez.json").read_bytes()


@pytest.fixture(scope="session")
def lopez():
    return load(LOPEZ_DOC)


@pytest.fixture
def lopez_file(tmp_path):
    path = tmp_path / "lopez.json"
    path.write_bytes(canonical_lopez_bytes())
    return path
