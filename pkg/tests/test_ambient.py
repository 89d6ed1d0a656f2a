"""Ambient product-of-lex-fibers arithmetic and order."""

import pytest
from hypothesis import given, strategies as st

from ellgroup.ambient import Ambient, lex_level, lex_sign

AMB = Ambient((2, 1))
vec = st.tuples(*[st.integers(-8, 8)] * 3)


def test_lex_sign_and_level():
    assert lex_sign((0, 0)) == 0
    assert lex_sign((0, -3)) == -1
    assert lex_sign((2, -9)) == 1
    assert lex_level((0, 0)) == 0
    assert lex_level((0, 5)) == 1
    assert lex_level((1, 0)) == 2


def test_leq_lex_within_fiber():
    amb = Ambient((2,))
    assert amb.leq((0, 100), (1, -100))
    assert not amb.leq((1, -100), (0, 100))


@given(vec, vec)
def test_join_meet_against_leq(a, b):
    j = AMB.join(a, b)
    m = AMB.meet(a, b)
    assert AMB.leq(a, j) and AMB.leq(b, j)
    assert AMB.leq(m, a) and AMB.leq(m, b)
    assert AMB.add(j, m) == AMB.add(a, b)


@given(vec)
def test_pos_neg_abs_identities(a):
    pos, neg = AMB.pos_part(a), AMB.neg_part(a)
    assert AMB.sub(pos, neg) == a
    assert AMB.join(pos, neg) == AMB.abs(a)
    assert AMB.meet(pos, neg) == AMB.zero()


@given(vec)
def test_level_pattern_matches_fibers(a):
    pat = AMB.level_pattern(a)
    assert pat == tuple(lex_level(f) for f in AMB.split(a))
    assert AMB.support(a) == frozenset(i for i, l in enumerate(pat) if l > 0)


def test_dominating_multiple_examples():
    amb = Ambient((2,))
    # equal levels: leading coefficients decide
    assert amb.dominating_multiple((0, 5), (0, 2)) == 3
    # lower level is absorbed by any positive leading coefficient
    assert amb.dominating_multiple((0, 100), (1, 0)) == 1
    # higher level can never be dominated
    assert amb.dominating_multiple((1, 0), (0, 100)) is None
    assert amb.dominating_multiple((0, 0), (1, 0)) == 1


def test_dominating_multiple_rejects_negative():
    with pytest.raises(ValueError):
        AMB.dominating_multiple((-1, 0, 0), (1, 0, 0))


@given(vec, vec)
def test_dominating_multiple_certificate(a, b):
    a, b = AMB.abs(a), AMB.abs(b)
    k = AMB.dominating_multiple(a, b)
    if k is None:
        # no multiple works: in particular a few small ones must fail
        for n in (1, 2, 3, 50):
            assert not AMB.leq(a, AMB.scale(b, n))
    else:
        assert k >= 1
        assert AMB.leq(a, AMB.scale(b, k))


@given(vec, vec)
def test_dominance_is_exactly_level_domination(a, b):
    a, b = AMB.abs(a), AMB.abs(b)
    k = AMB.dominating_multiple(a, b)
    la, lb = AMB.level_pattern(a), AMB.level_pattern(b)
    assert (k is not None) == all(x <= y or x == 0 for x, y in zip(la, lb))
