from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from twofill.numerics import (DomainError, GeometricTail, Q, fmt, is_dyadic, sumGeometricTail,
                              tail_from_terms)


@pytest.mark.parametrize("first,ratio,total", [
    (Fraction(1, 16), Fraction(1, 2), Fraction(1, 8)),
    (Fraction(0), Fraction(1, 2), Fraction(0)),
    (Fraction(1, 2), Fraction(1, 4), Fraction(2, 3)),
])
def test_geometric_tail(first, ratio, total):
    assert sumGeometricTail(GeometricTail(first, ratio)) == total


@pytest.mark.parametrize("ratio", [Fraction(1), Fraction(-1), Fraction(3, 2)])
def test_divergent_ratio_rejected(ratio):
    with pytest.raises(DomainError):
        sumGeometricTail(GeometricTail(Fraction(1), ratio))


def test_tail_from_terms():
    t = tail_from_terms([Fraction(3, 8), Fraction(3, 32), Fraction(3, 128)])
    assert t == GeometricTail(Fraction(3, 8), Fraction(1, 4))
    assert tail_from_terms([0, 0, 0]).firstTerm == 0
    with pytest.raises(DomainError):
        tail_from_terms([1, Fraction(1, 2), Fraction(1, 3)])
    with pytest.raises(DomainError):
        tail_from_terms([1, Fraction(1, 2)])


def test_q_and_fmt():
    assert Q("3/4") == Fraction(3, 4)
    assert Q(2) == 2
    assert fmt(Fraction(6, 8)) == "3/4"
    assert fmt(Fraction(4, 2)) == "2"
    with pytest.raises(TypeError):
        Q(0.5)


def test_dyadic():
    assert is_dyadic(Fraction(173, 1024))
    assert not is_dyadic(Fraction(1, 3))


@given(st.fractions())
def test_fmt_round_trip(x):
    assert Q(fmt(x)) == x
