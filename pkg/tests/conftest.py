import pytest
from hypothesis import settings

from ellgroup.ambient import Ambient
from ellgroup.lgroup import full, generate_lsubgroup

settings.register_profile("suite", max_examples=60, deadline=None)
settings.load_profile("suite")


@pytest.fixture
def zsq():
    """Z^2 with the product order: two depth-1 fibers."""
    return full(Ambient((1, 1)))


@pytest.fixture
def lexz2():
    """Z lex Z: one fiber of depth 2, totally ordered."""
    return full(Ambient((2,)))


@pytest.fixture
def z3():
    return full(Ambient((1, 1, 1)))


@pytest.fixture
def mixed21():
    """(Z lex Z) x Z: one depth-2 fiber and one depth-1 fiber."""
    return full(Ambient((2, 1)))


@pytest.fixture
def diag():
    """The diagonal in Z^2, a totally ordered rank-1 subgroup."""
    return generate_lsubgroup(Ambient((1, 1)), [(1, 1)], verify_box=4)
