"""Fixed-point fractions on [0,1) with 128 fractional bits.

Scan kernels track q*beta mod 1 as an integer in [0, 2**128); addition
mod 2**128 is exactly addition mod 1 on the circle.  Everything here is
plain integer arithmetic so the compiled and pure-Python kernels see
bit-identical values.
"""

from __future__ import annotations

import math
from fractions import Fraction

PREC = 128
SCALE = 1 << PREC
MASK = SCALE - 1
HALF = 1 << (PREC - 1)

U64 = (1 << 64) - 1


class PrecisionFloorError(Exception):
    """The working precision cannot resolve the requested thresholds."""


def split64(x: int) -> tuple[int, int]:
    """Split a 128-bit integer into (hi, lo) 64-bit limbs."""
    return (x >> 64) & U64, x & U64


def join64(hi: int, lo: int) -> int:
    return (hi << 64) | lo


def frac_from_fraction(x: Fraction) -> int:
    """floor(frac(x) * 2**128), the canonical fixed-point image of x mod 1."""
    num, den = x.numerator, x.denominator
    num %= den
    return (num << PREC) // den


def fixed_to_fraction(f: int) -> Fraction:
    return Fraction(f, SCALE)


def fixed_to_float(f: int) -> float:
    # float(int) rounds to nearest, matching the C u128 -> double cast.
    return float(f) * 2.0**-PREC


def dist_fixed(f: int) -> int:
    """Distance (in 2**-128 units) from f/2**128 to the nearest integer."""
    return min(f & MASK, SCALE - (f & MASK)) if (f & MASK) else 0


def mul_mod1(f: int, q: int) -> tuple[int, int]:
    """q * (f/2**128) as (integer part, fractional 128-bit part)."""
    t = q * f
    return t >> PREC, t & MASK


def decompose(x: Fraction) -> tuple[int, int]:
    """Split a real into (floor parity, 128-bit fraction), rounding the
    fraction to nearest.  A round up to 1 wraps and flips the parity."""
    fl = x.numerator // x.denominator
    fr = x - fl
    f = (fr.numerator * SCALE * 2 + fr.denominator) // (2 * fr.denominator)
    if f >= SCALE:
        f -= SCALE
        fl += 1
    return fl & 1, f


def sqrt_fixed(d: int) -> int:
    """floor(frac(sqrt(d)) * 2**128) for a positive non-square integer d."""
    if d <= 0:
        raise ValueError("d must be positive")
    r = math.isqrt(d)
    if r * r == d:
        raise ValueError("d must not be a perfect square")
    return math.isqrt(d << (2 * PREC)) - (r << PREC)


def float_to_scaled_int(x: float, shift: int) -> int:
    """x * 2**shift as an exact integer; raises if x has finer dyadic tail."""
    if not math.isfinite(x):
        raise ValueError("non-finite value")
    fr = Fraction(x) * (1 << shift)
    if fr.denominator != 1:
        raise ValueError(f"{x!r} is not exact at 2**-{shift}")
    return fr.numerator


# splitmix64: the seeded generator used by all sampling experiments.
# State transition: s' = (s + 0x9E3779B97F4A7C15) mod 2**64; output is
# s' mixed by two xor-multiply rounds (Steele-Lea-Flood finalizer).

_SM_GAMMA = 0x9E3779B97F4A7C15
_SM_M1 = 0xBF58476D1CE4E5B9
_SM_M2 = 0x94D049BB133111EB
_M64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _M64

    def next64(self) -> int:
        self.state = (self.state + _SM_GAMMA) & _M64
        z = self.state
        z = ((z ^ (z >> 30)) * _SM_M1) & _M64
        z = ((z ^ (z >> 27)) * _SM_M2) & _M64
        return z ^ (z >> 31)

    def next_fixed128(self) -> int:
        """A uniform 128-bit fixed-point fraction (two draws, hi then lo)."""
        hi = self.next64()
        lo = self.next64()
        return join64(hi, lo)
