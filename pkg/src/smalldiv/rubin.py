"""Truncated asymptotic multiplier model and its small-divisor scan.

The model quantity is F(beta, j) = j sin(pi(j beta - r0))
+ rho(rho-1) sin(pi(j beta - r1)) with r0 = (rho - 1 - beta n + beta)/2
and r1 = r0 - (beta + 1/2).  A small divisor at level c is |F| < c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .betaspec import BetaValue, resolve_beta
from .fixedpoint import HALF, MASK, PREC, SCALE, decompose

_TWON = 2.0**-128


@dataclass(frozen=True)
class RubinParams:
    n: int
    rho: float
    beta: BetaValue
    r0: Fraction  # exact, from the dyadic beta
    r1: Fraction
    theta: float
    t: float
    critical: bool  # rho in {0, 1}: second sine term vanishes
    # fixed-point images for the kernels (parity of floor, 128-bit frac)
    r0_par: int
    r0_fixed: int
    r1_par: int
    r1_fixed: int

    @property
    def rho2(self) -> float:
        return self.rho * (self.rho - 1.0)


def make_params(n: int, rho: float, beta) -> RubinParams:
    if n < 2:
        raise ValueError("n must be >= 2")
    bv = beta if isinstance(beta, BetaValue) else resolve_beta(beta)
    if bv.fixed in (0, HALF):
        raise ValueError("beta must lie in (0,1) and differ from 1/2")
    bf = bv.fraction
    rho_f = Fraction(float(rho))
    r0 = (rho_f - 1 - bf * n + bf) / 2
    r1 = r0 - (bf + Fraction(1, 2))
    r0_par, r0_fixed = decompose(r0)
    r1_par, r1_fixed = decompose(r1)
    theta = bv.as_float * math.pi
    return RubinParams(
        n=n,
        rho=float(rho),
        beta=bv,
        r0=r0,
        r1=r1,
        theta=theta,
        t=math.cos(theta),
        critical=float(rho) in (0.0, 1.0),
        r0_par=r0_par,
        r0_fixed=r0_fixed,
        r1_par=r1_par,
        r1_fixed=r1_fixed,
    )


@dataclass(frozen=True)
class SmallDivisorHit:
    j: int
    f_value: float
    frac_distance: float  # ||j beta - r0||


def _signed_offset(d: int) -> float:
    """Signed distance (as float) of a 128-bit circle value to 0."""
    if d >= HALF:
        return -(float(SCALE - d) * _TWON)
    return float(d) * _TWON


def _sine_term(f: int, par: int, rf: int, rp: int) -> float:
    """sin(pi(j beta - r)) from the fixed-point state of j beta.

    Same decomposition as the kernels: period-2 sign from the integer
    parts, full-precision offset near the zeros of sine.
    """
    d = (f - rf) & MASK
    b = 1 if f < rf else 0
    npar = 1 if d >= HALF else 0
    v = _signed_offset(d)
    s = math.sin(math.pi * v)
    if (par ^ rp ^ b ^ npar) & 1:
        s = -s
    return s


def f_value(p: RubinParams, j: int) -> float:
    """F(beta, j) with the argument reduced exactly mod 2."""
    if j < 1:
        raise ValueError("j must be >= 1")
    t = j * p.beta.fixed
    i, f = t >> PREC, t & MASK
    par = i & 1
    s0 = _sine_term(f, par, p.r0_fixed, p.r0_par)
    s1 = _sine_term(f, par, p.r1_fixed, p.r1_par)
    return j * s0 + p.rho2 * s1


def frac_distance(p: RubinParams, j: int) -> float:
    """||j beta - r0|| evaluated from the exact fixed-point state."""
    d = ((j * p.beta.fixed) - p.r0_fixed) & MASK
    return float(min(d, SCALE - d)) * _TWON


def scan_small_divisors(p: RubinParams, c: float, j_max: int,
                        threads: int = 1, impl=None) -> list[SmallDivisorHit]:
    """All j <= j_max with |F(beta,j)| < c, ordered by j (pruned scan)."""
    if c <= 0:
        raise ValueError("c must be positive")
    if j_max > 10**9:
        raise ValueError("j_max above the supported range 10^9")
    use = impl if impl is not None else kernels.get_impl()
    js, fs, ds = kernels.scan_f_range(
        use, p.beta.fixed, 1, j_max, p.r0_par, p.r0_fixed,
        p.r1_par, p.r1_fixed, p.rho2, c, threads=threads,
    )
    return [
        SmallDivisorHit(int(j), float(f), float(d))
        for j, f, d in zip(js, fs, ds)
    ]


def scan_small_divisors_unpruned(p: RubinParams, c: float,
                                 j_max: int) -> list[SmallDivisorHit]:
    """Oracle: evaluate F at every j with no short-circuit."""
    hits = []
    for j in range(1, j_max + 1):
        fv = f_value(p, j)
        if abs(fv) < c:
            hits.append(SmallDivisorHit(j, fv, frac_distance(p, j)))
    return hits


def model_multiplier(p: RubinParams, j: int) -> float:
    """Model multiplier value F(beta,j) / j^(rho+1)."""
    return f_value(p, j) / (j ** (p.rho + 1.0))
