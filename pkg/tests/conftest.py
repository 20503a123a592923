"""
Shared pytest fixtures and the --runslow switch for the randomized suites.
"""
import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.display_rules import DisplayCalculus
from models.labeled_rules import LabeledCalculus
from utils.proof_io import read_axioms

# axiom sets the property suites run over
AXIOM_SETS = {
    "K": "",
    "T": "T",
    "4": "4",
    "5": "5",
    "45": "4\n5",
}


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run the randomized suites at full size")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size randomized suite")


@pytest.fixture
def runslow(request):
    return request.config.getoption("--runslow")


@pytest.fixture
def rounds(runslow):
    """Sample count for a randomized suite: small by default, full with --runslow."""
    def pick(default: int, full: int) -> int:
        return full if runslow else default
    return pick


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def axioms():
    """Axioms by standard name or text, e.g. axioms("4", "5")."""
    def build(*lines):
        return read_axioms("\n".join(lines))
    return build


@pytest.fixture
def display_calculus(axioms):
    def build(*lines):
        return DisplayCalculus.for_axioms(axioms(*lines))
    return build


@pytest.fixture
def labeled_calculus(axioms):
    def build(*lines):
        return LabeledCalculus.for_axioms(axioms(*lines))
    return build
