"""Specification and resolution of the rotation number beta.

Accepted forms (also the CLI grammar): a decimal string ("0.3"), a
rational ("1/3"), "golden" for (sqrt(5)-1)/2, "sqrt:D" for the
fractional part of sqrt(D), "cf:[a1,a2,...]" for the purely periodic
continued fraction [0; a1, a2, ..., a1, ...], and "rand" for a seeded
uniform draw.

Resolution produces a BetaValue: a fixed-point integer with `precision`
fractional bits (stored left-aligned in 128 bits).  That dyadic rational
is the number every scan actually uses, so exact set-equality contracts
between scan implementations are meaningful.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .fixedpoint import PREC, SCALE, SplitMix64, frac_from_fraction

_MIN_PRECISION = 96


@dataclass(frozen=True)
class BetaValue:
    """A resolved beta: exact dyadic fraction fixed/2**128 in (0,1)."""

    fixed: int
    precision: int = PREC
    source: str = ""
    exact_rational: Fraction | None = None  # the un-rounded input, if rational

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.fixed, SCALE)

    @property
    def as_float(self) -> float:
        return float(self.fixed) * 2.0**-PREC

    def __repr__(self):
        return f"BetaValue({self.source or self.as_float})"


def _check_range(fixed: int, source: str) -> None:
    if not 0 < fixed < SCALE:
        raise ValueError(f"beta {source!r} must resolve into (0,1)")


def _truncate(fixed: int, precision: int) -> int:
    if precision < _MIN_PRECISION or precision > PREC:
        raise ValueError(f"precision must be in [{_MIN_PRECISION}, {PREC}]")
    drop = PREC - precision
    return (fixed >> drop) << drop


def _golden_fixed() -> int:
    # (sqrt(5)-1)/2 at 128 fractional bits
    return (math.isqrt(5 << (2 * PREC)) - SCALE) >> 1


def _sqrt_frac_fixed(d: int) -> int:
    if d <= 0:
        raise ValueError("sqrt:D needs a positive integer")
    r = math.isqrt(d)
    if r * r == d:
        raise ValueError("sqrt:D needs a non-square D")
    return math.isqrt(d << (2 * PREC)) - (r << PREC)


def _cf_periodic_fixed(quotients: list[int]) -> int:
    # x = [0; a1..ak, a1..ak, ...]: one period maps x -> (p*x + p0)/(q*x + q0),
    # so q x^2 + (q0 - p) x - p0 = 0; take the positive root.
    if not quotients or any(a < 1 for a in quotients):
        raise ValueError("cf quotients must be positive integers")
    # one period is the Moebius map x -> (A x + B)/(C x + D); composing
    # t -> 1/(a + t) left to right
    A, B, C, D = 1, 0, 0, 1
    for a in quotients:
        A, B = B, a * B + A
        C, D = D, a * D + C
    # fixed point: C x^2 + (D - A) x - B = 0, positive root
    b = D - A
    disc = b * b + 4 * C * B
    return (math.isqrt(disc << (2 * PREC)) - (b << PREC)) // (2 * C)


_DEC_RE = re.compile(r"^\d+\.\d+$|^0$|^1$|^\.\d+$")
_RAT_RE = re.compile(r"^(\d+)\s*/\s*(\d+)$")


def resolve_beta(spec, seed: int = 0, precision: int = PREC) -> BetaValue:
    """Resolve a beta specification string (or Fraction/float) to a BetaValue."""
    if isinstance(spec, BetaValue):
        return spec
    exact = None
    if isinstance(spec, Fraction):
        exact = spec
        fixed = frac_from_fraction(spec)
        source = str(spec)
    elif isinstance(spec, float):
        exact = Fraction(spec)
        fixed = frac_from_fraction(exact)
        source = repr(spec)
    elif isinstance(spec, str):
        s = spec.strip()
        source = s
        if s == "golden":
            fixed = _golden_fixed()
        elif s == "rand":
            fixed = SplitMix64(seed).next_fixed128()
        elif s.startswith("sqrt:"):
            fixed = _sqrt_frac_fixed(int(s[5:]))
        elif s.startswith("cf:"):
            body = s[3:].strip()
            if body.startswith("[") and body.endswith("]"):
                body = body[1:-1]
            quotients = [int(t) for t in body.split(",") if t.strip()]
            fixed = _cf_periodic_fixed(quotients)
        else:
            m = _RAT_RE.match(s)
            if m:
                exact = Fraction(int(m.group(1)), int(m.group(2)))
            else:
                try:
                    exact = Fraction(s)  # decimal string, parsed exactly
                except ValueError:
                    raise ValueError(f"cannot parse beta spec {spec!r}") from None
            fixed = frac_from_fraction(exact)
    else:
        raise TypeError(f"unsupported beta spec type {type(spec).__name__}")
    fixed = _truncate(fixed, precision)
    _check_range(fixed, source)
    return BetaValue(fixed=fixed, precision=precision, source=source,
                     exact_rational=exact)


def random_beta(rng: SplitMix64, precision: int = PREC) -> BetaValue:
    """Next uniform beta from an already-running generator."""
    fixed = _truncate(rng.next_fixed128(), precision)
    while not 0 < fixed < SCALE:
        fixed = _truncate(rng.next_fixed128(), precision)
    return BetaValue(fixed=fixed, precision=precision, source="rand")
