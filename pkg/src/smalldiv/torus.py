"""Exact arithmetic on the circle R/Z.

Points, arcs and finite unions of arcs with exact (rational) measure,
intersection and union.  All values are Fractions internally, so
measure identities like inclusion-exclusion hold with zero tolerance.
Floats are accepted anywhere and converted exactly (every finite float
is a dyadic rational).
"""

from __future__ import annotations

import math
from fractions import Fraction

HALF = Fraction(1, 2)
ONE = Fraction(1)


def _to_fraction(x) -> Fraction:
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError("non-finite value")
        return Fraction(x)
    return Fraction(x)


def dist_nearest(x) -> Fraction:
    """Distance from x to the nearest integer, in [0, 1/2]."""
    fx = _to_fraction(x)
    fr = fx - (fx.numerator // fx.denominator)
    return min(fr, 1 - fr)


class TorusPoint:
    """A point on R/Z stored exactly (value in [0,1))."""

    __slots__ = ("value",)

    def __init__(self, value):
        v = _to_fraction(value)
        self.value = v - (v.numerator // v.denominator)

    def __eq__(self, other):
        return isinstance(other, TorusPoint) and self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"TorusPoint({self.value})"

    def dist(self, other) -> Fraction:
        o = other.value if isinstance(other, TorusPoint) else _to_fraction(other)
        return dist_nearest(self.value - o)


class FullCircle:
    """Sentinel for an arc/union covering all of R/Z."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "FullCircle()"


FULL_CIRCLE = FullCircle()


class TorusInterval:
    """Closed arc {y : ||y - center|| <= radius} with radius < 1/2."""

    __slots__ = ("center", "radius")

    def __init__(self, center, radius):
        r = _to_fraction(radius)
        if r < 0:
            raise ValueError("radius must be nonnegative")
        if r >= HALF:
            raise ValueError("radius >= 1/2: use FULL_CIRCLE")
        c = center.value if isinstance(center, TorusPoint) else _to_fraction(center)
        self.center = c - (c.numerator // c.denominator)
        self.radius = r

    @property
    def measure(self) -> Fraction:
        return 2 * self.radius

    def segments(self):
        """The arc as one or two [lo, hi] pieces of [0,1] (cut at 0)."""
        lo = self.center - self.radius
        hi = self.center + self.radius
        if lo < 0:
            return [(lo + 1, ONE), (Fraction(0), hi)]
        if hi > 1:
            return [(lo, ONE), (Fraction(0), hi - 1)]
        return [(lo, hi)]

    def __repr__(self):
        return f"TorusInterval({self.center}, {self.radius})"


def _canonical(segs):
    """Sort [lo,hi] pieces, merge overlapping/touching ones, drop empties."""
    segs = sorted((lo, hi) for lo, hi in segs if hi > lo)
    out = []
    for lo, hi in segs:
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return out


class IntervalUnion:
    """Canonical finite union of arcs: disjoint sorted [lo,hi] pieces of [0,1].

    Pieces touching at a point are merged (closed-arc semantics); a union
    of total length 1 collapses to the single piece [0,1] and reports
    is_full.  Immutable.
    """

    __slots__ = ("segments",)

    def __init__(self, segments=()):
        segs = _canonical([(_to_fraction(a), _to_fraction(b)) for a, b in segments])
        for lo, hi in segs:
            if lo < 0 or hi > 1:
                raise ValueError("segments must lie in [0,1]")
        self.segments = tuple(segs)

    @classmethod
    def full(cls):
        return cls([(0, 1)])

    @classmethod
    def empty(cls):
        return cls([])

    @classmethod
    def from_arcs(cls, arcs):
        """Build from TorusInterval / FullCircle items."""
        segs = []
        for a in arcs:
            if isinstance(a, FullCircle):
                return cls.full()
            segs.extend(a.segments())
        return cls(segs)

    @property
    def measure(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.segments), Fraction(0))

    @property
    def is_full(self) -> bool:
        return self.measure == 1

    @property
    def is_empty(self) -> bool:
        return not self.segments

    def contains(self, x) -> bool:
        v = x.value if isinstance(x, TorusPoint) else _to_fraction(x)
        v = v - (v.numerator // v.denominator)
        # the wrap point: [.., 1] pieces contain 0 on the circle
        return any(
            lo <= v <= hi or (hi == 1 and v == 0) for lo, hi in self.segments
        )

    def intersect(self, other: "IntervalUnion") -> "IntervalUnion":
        a, b = self.segments, other.segments
        out = []
        ia = ib = 0
        while ia < len(a) and ib < len(b):
            lo = max(a[ia][0], b[ib][0])
            hi = min(a[ia][1], b[ib][1])
            if lo < hi:
                out.append((lo, hi))
            if a[ia][1] < b[ib][1]:
                ia += 1
            else:
                ib += 1
        return IntervalUnion(out)

    def union(self, other: "IntervalUnion") -> "IntervalUnion":
        return IntervalUnion(list(self.segments) + list(other.segments))

    def __eq__(self, other):
        return (
            isinstance(other, IntervalUnion) and self.segments == other.segments
        )

    def __hash__(self):
        return hash(self.segments)

    def __repr__(self):
        return f"IntervalUnion({list(self.segments)})"


def union_measure(u) -> Fraction:
    """Measure of an IntervalUnion or FULL_CIRCLE."""
    if isinstance(u, FullCircle):
        return ONE
    return u.measure


def intersect(u, v):
    """Set intersection; FULL_CIRCLE acts as identity."""
    if isinstance(u, FullCircle):
        return v
    if isinstance(v, FullCircle):
        return u
    return u.intersect(v)
