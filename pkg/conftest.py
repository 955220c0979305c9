import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import symexpr as sx  # noqa: E402
from Golden_Corpus import corpus_entry  # noqa: E402


@pytest.fixture
def alphas():
    return sx.directions(3)


@pytest.fixture
def corpus():
    """Connection of a named corpus entry."""
    return lambda name: corpus_entry(name).connection()


@pytest.fixture
def family1_rotation(corpus):
    return corpus("FAMILY1_ROTATION")


@pytest.fixture
def family2_l3(corpus):
    return corpus("FAMILY2_L3_NOT_SZABO")
