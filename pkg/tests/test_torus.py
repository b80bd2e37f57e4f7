from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smalldiv.torus import (FULL_CIRCLE, IntervalUnion, TorusInterval,
                            TorusPoint, dist_nearest, intersect,
                            union_measure)

fractions = st.fractions(min_value=0, max_value=1, max_denominator=64)
radii = st.fractions(min_value=0, max_value=Fraction(31, 64),
                     max_denominator=64)


def arcs():
    return st.builds(TorusInterval, fractions, radii)


def unions():
    return st.builds(IntervalUnion.from_arcs, st.lists(arcs(), max_size=5))


def test_dist_nearest_basic():
    assert dist_nearest(Fraction(1, 4)) == Fraction(1, 4)
    assert dist_nearest(Fraction(3, 4)) == Fraction(1, 4)
    assert dist_nearest(Fraction(7, 2)) == Fraction(1, 2)
    assert dist_nearest(5) == 0


def test_point_distance_wraps():
    a = TorusPoint(Fraction(1, 10))
    b = TorusPoint(Fraction(9, 10))
    assert a.dist(b) == Fraction(1, 5)


def test_interval_rejects_half_radius():
    with pytest.raises(ValueError):
        TorusInterval(0, Fraction(1, 2))


def test_wrap_around_segments():
    arc = TorusInterval(Fraction(1, 20), Fraction(1, 10))
    u = IntervalUnion.from_arcs([arc])
    assert u.measure == Fraction(1, 5)
    assert u.contains(Fraction(19, 20) + Fraction(1, 100))
    assert u.contains(Fraction(1, 10))
    assert not u.contains(Fraction(1, 2))


def test_full_circle_identity():
    u = IntervalUnion.from_arcs([TorusInterval(Fraction(1, 3), Fraction(1, 8))])
    assert intersect(FULL_CIRCLE, u) is u
    assert union_measure(FULL_CIRCLE) == 1


@settings(max_examples=200, deadline=None)
@given(unions(), unions())
def test_inclusion_exclusion(u, v):
    lhs = u.union(v).measure + u.intersect(v).measure
    assert lhs == u.measure + v.measure


@settings(max_examples=200, deadline=None)
@given(unions())
def test_canonical_idempotent(u):
    assert IntervalUnion(u.segments) == u
    assert u.union(u) == u
    assert u.intersect(u).measure == u.measure


@settings(max_examples=200, deadline=None)
@given(unions(), unions())
def test_intersection_bounded(u, v):
    w = u.intersect(v)
    assert w.measure <= min(u.measure, v.measure)
    assert w.measure >= u.measure + v.measure - 1


def test_touching_pieces_merge():
    u = IntervalUnion([(0, Fraction(1, 4)), (Fraction(1, 4), Fraction(1, 2))])
    assert u.segments == ((Fraction(0), Fraction(1, 2)),)


def test_total_length_one_is_full():
    u = IntervalUnion([(0, Fraction(1, 2)), (Fraction(1, 2), 1)])
    assert u.is_full
