import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from twofill import flatdyn
from twofill.numerics import DomainError


@pytest.fixture(scope="module")
def F48():
    return flatdyn.buildF(48)


@pytest.fixture(scope="module")
def Sigma():
    return flatdyn.buildSigma(24)


def test_sequences():
    ys, xs = flatdyn.y_seq(20), flatdyn.x_seq(4)
    assert (ys[0], ys[1], ys[2]) == (Fraction(1, 2), Fraction(1, 4), Fraction(3, 8))
    assert (xs[1], xs[2]) == (Fraction(3, 4), Fraction(1, 8))
    assert abs(ys[20] - Fraction(1, 3)) < Fraction(1, 10 ** 5)


@pytest.mark.parametrize("src,dst", [("a1", "p0"), ("p0", "p2"), ("q0", "q2"), ("a0", "p1")])
def test_phi_on_marked_points(Sigma, src, dst):
    assert flatdyn.applyPhi(Sigma.marked[src]) == Sigma.marked[dst]


@pytest.mark.parametrize("start,steps,want", [
    ("p0", 3, ["p2", "p4", "p6"]),
    ("q-1", 3, ["q1", "q3", "q5"]),
    ("b0", 2, ["q-2", "q0"]),
    ("a1", 6, ["p0", "p2", "p4", "p6", "p8", "p10"]),
    ("a0", 6, ["p1", "p3", "p5", "p7", "p9", "p11"]),
])
def test_orbits(Sigma, start, steps, want):
    assert flatdyn.singularOrbit(Sigma, start, steps) == (want, "ok")


def test_orbit_errors(Sigma):
    with pytest.raises(DomainError):
        flatdyn.singularOrbit(Sigma, "zz", 2)
    with pytest.raises(DomainError):
        flatdyn.singularOrbit(Sigma, "p0", 0)
    names, note = flatdyn.singularOrbit(flatdyn.buildSigma(6), "p0", 6)
    assert note != "ok" and len(names) < 6


def test_phi_rejects_outside():
    with pytest.raises(DomainError):
        flatdyn.applyPhi((Fraction(2), Fraction(0)))


def test_dyadic_heights():
    assert flatdyn.dyadicLeafHeights(0) == {Fraction(1, 2)}
    assert flatdyn.dyadicLeafHeights(1) == {Fraction(1, 4), Fraction(3, 4)}
    with pytest.raises(DomainError):
        flatdyn.dyadicLeafHeights(-1)


@pytest.mark.parametrize("i", range(0, 8))
def test_separatrix_heights(F48, i):
    tr = flatdyn.traceSeparatrix(F48, i)
    assert tr.terminal == "SingularityHit" and tr.detail == "r"
    assert set(tr.heights) == flatdyn.dyadicLeafHeights(i)


def test_iet_piece():
    iet = flatdyn.buildIET(16)
    m2 = [p for p in iet.pieces if p[3] == 2][0]
    lo, hi, t, _ = m2
    assert (lo, hi) == (Fraction(11, 32), Fraction(3, 8))
    assert {lo + t, hi + t} == {Fraction(5, 8), Fraction(21, 32)}
    assert iet.source_length() == iet.image_length()
    images = sorted(iet.images())
    assert all(a[1] <= b[0] for a, b in zip(images, images[1:]))


def test_iet_errors():
    iet = flatdyn.buildIET(16)
    with pytest.raises(flatdyn.SingularPointError):
        iet.apply(Fraction(1, 3))
    with pytest.raises(flatdyn.SingularPointError):
        iet.apply(Fraction(1, 2))
    with pytest.raises(DomainError):
        flatdyn.buildIET(2)


def test_second_return_at_173(F48):
    x = Fraction(173, 1024)
    assert flatdyn.second_return(F48, x) == flatdyn.applyIET(x) == Fraction(941, 1024)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=3 * 1024 - 1).filter(lambda a: a % 3))
def test_iet_matches_flow(a):
    S = flatdyn.buildF(48)
    x = Fraction(a, 3 * 1024)
    assert flatdyn.second_return(S, x) == flatdyn.applyIET(x, 48)


def test_histogram_total_mass():
    h = flatdyn.hittingHistogram(flatdyn.seeded_height(4), 500, 1)
    assert h.complete and h.counts == [500]


def test_histogram_singular_start_stops():
    # a dyadic height lies on a singular leaf
    h = flatdyn.hittingHistogram(Fraction(173, 1024), 10 ** 5, 8)
    assert not h.complete and h.visits < 10 ** 5


def test_histogram_balanced():
    h = flatdyn.hittingHistogram(flatdyn.seeded_height(9), 20000, 8)
    assert h.complete
    assert max(abs(c - 2500) for c in h.counts) < 125


def test_seeded_height_not_dyadic():
    for s in range(20):
        x = flatdyn.seeded_height(s)
        assert x.denominator % 5 == 0


def test_phi_preserves_leaf_segment_totals(Sigma):
    # phi is a bijection off the singular leaves: a batch of points keeps its size
    rng = random.Random(3)
    pts = {(Fraction(rng.randrange(1, 997), 997), Fraction(rng.randrange(1, 991), 991)) for _ in range(200)}
    imgs = {flatdyn.applyPhi(p) for p in pts}
    assert len(imgs) == len(pts)


def test_render():
    svg = flatdyn.render_svg(flatdyn.buildSigma(6))
    assert svg.startswith("<svg") and "<title>p0</title>" in svg
