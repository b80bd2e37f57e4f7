"""Divisor sieves, the gcd/totient identity, eta bounds, iterated-log
weights and the partial-sum series diagnostics.

Identity checks are exact (integer/rational arithmetic); the series are
floating partial sums with a fixed accumulation order so results are
reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels

SIEVE_LIMIT = 10**8


@dataclass
class SieveTable:
    limit: int
    d: np.ndarray  # divisor counts, d[0] = 0
    phi: np.ndarray  # totients, phi[0] = 0


def sieve(limit: int, impl=None) -> SieveTable:
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if limit > SIEVE_LIMIT:
        raise ValueError(f"limit above the supported bound {SIEVE_LIMIT}")
    use = impl if impl is not None else kernels.get_impl()
    return SieveTable(limit=limit, d=use.sieve_d(limit), phi=use.sieve_phi(limit))


def gcd_sum_identity_check(n: int):
    """(1/n) sum_{m<=n} gcd(n,m) versus sum_{e|n} phi(e)/e, exact."""
    if n < 1:
        raise ValueError("n must be >= 1")
    lhs = Fraction(int(np.gcd(n, np.arange(1, n + 1, dtype=np.int64)).sum()), n)
    rhs = Fraction(0)
    for e in range(1, math.isqrt(n) + 1):
        if n % e == 0:
            rhs += Fraction(_phi_single(e), e)
            f = n // e
            if f != e:
                rhs += Fraction(_phi_single(f), f)
    return lhs, rhs, lhs == rhs


def _phi_single(n: int) -> int:
    out = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out -= out // m
    return out


def batch_gcd_identity(n_max: int, table: SieveTable | None = None) -> bool:
    """The identity n * sum_{e|n} phi(e)/e = sum_{m<=n} gcd(n,m) for all
    n <= n_max, checked with integer arithmetic."""
    t = table if table is not None else sieve(n_max)
    phi = t.phi
    rhs = np.zeros(n_max + 1, dtype=np.int64)
    for e in range(1, n_max + 1):
        # contributes phi(e) * (n/e) to each multiple n of e
        k = n_max // e
        rhs[e::e] += phi[e] * np.arange(1, k + 1, dtype=np.int64)
    for n in range(1, n_max + 1):
        lhs = int(np.gcd(n, np.arange(1, n + 1, dtype=np.int64)).sum())
        if lhs != rhs[n]:
            return False
    return True


@dataclass(frozen=True)
class EtaReport:
    q: int
    y: int
    z: int
    eta_value: Fraction
    divisor_phi_bound: Fraction
    d_bound: int
    chain_ok: bool


def eta(q: int, y: int = 1, z: int = 0) -> EtaReport:
    """eta(q) = sum_{1<=r<=q} gcd(qy+z, ry+z)/(qy+z) and its bounds."""
    if q < 1 or y < 1 or not 0 <= z < y:
        raise ValueError("need q >= 1, y >= 1, 0 <= z < y")
    n = q * y + z
    r = np.arange(1, q + 1, dtype=np.int64)
    s = int(np.gcd(n, r * y + z).sum())
    eta_value = Fraction(s, n)
    bound = Fraction(0)
    for e in range(1, math.isqrt(n) + 1):
        if n % e == 0:
            bound += Fraction(_phi_single(e), e)
            f = n // e
            if f != e:
                bound += Fraction(_phi_single(f), f)
    d_n = sum(2 - (e * e == n) for e in range(1, math.isqrt(n) + 1) if n % e == 0)
    return EtaReport(
        q=q, y=y, z=z, eta_value=eta_value, divisor_phi_bound=bound,
        d_bound=d_n, chain_ok=eta_value <= bound <= d_n,
    )


def batch_eta_chain(q_max: int, y: int, z: int,
                    table: SieveTable | None = None) -> bool:
    """chain_ok for all q <= q_max in one integer-arithmetic pass."""
    n_max = q_max * y + z
    t = table if table is not None else sieve(n_max)
    phi, d = t.phi, t.d
    # R[n] = n * sum_{e|n} phi(e)/e = sum_{e|n} phi(e) * (n/e)
    R = np.zeros(n_max + 1, dtype=np.int64)
    for e in range(1, n_max + 1):
        k = n_max // e
        R[e::e] += phi[e] * np.arange(1, k + 1, dtype=np.int64)
    for q in range(1, q_max + 1):
        n = q * y + z
        r = np.arange(1, q + 1, dtype=np.int64)
        s = int(np.gcd(n, r * y + z).sum())
        if not (s <= R[n] <= n * int(d[n])):
            return False
    return True


def _iter_exp(k: int) -> float:
    v = 1.0
    for _ in range(k):
        v = math.exp(v)
    return v


@dataclass(frozen=True)
class IterLogWeight:
    """F(x) = x (log x)(log log x) ... (log^{(k-2)} x)^{1+eps}.

    For k = 2 the product is read as the bare power x^{1+eps}.  x_min is
    the smallest argument at which every iterated-log factor is >= 1;
    evaluation clamps below it.
    """

    k: int
    eps: float

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be >= 2")
        if self.eps <= 0:
            raise ValueError("eps must be positive")

    @property
    def x_min(self) -> float:
        return _iter_exp(self.k - 2)

    def raw(self, x: float) -> float:
        if self.k == 2:
            return x ** (1.0 + self.eps)
        out = x
        t = x
        for i in range(self.k - 3):
            t = math.log(t)
            out *= t
        t = math.log(t)
        return out * t ** (1.0 + self.eps)

    def __call__(self, x: float) -> float:
        return self.raw(max(x, self.x_min))


def weight(x: float, w: IterLogWeight) -> float:
    """Clamped F(x).  x_min >= 1 for every k, so any x <= 0 clamps too."""
    return w(x)


def h_weight(x: float, w: IterLogWeight) -> float:
    """h(x) = F(log x), clamped."""
    if x <= 0:
        raise ValueError("x must be positive")
    return w(math.log(x))


@dataclass(frozen=True)
class WeightConditionReport:
    ratio_bound: float  # max h(2q)/h(q) over the grid
    tail_partial: float  # sum_{l<=L} 1/h(2^l)
    cauchy_ok: bool


def weight_condition_check(w: IterLogWeight, L: int,
                           grid_points: int = 200) -> WeightConditionReport:
    if L < 10:
        raise ValueError("L must be >= 10")
    qs = np.exp(np.linspace(math.log(2.0), L * math.log(2.0), grid_points))
    ratio = max(h_weight(2.0 * q, w) / h_weight(q, w) for q in qs)
    terms = [1.0 / w(l * math.log(2.0)) for l in range(L + 1)]
    total = math.fsum(terms)
    last_decade = math.fsum(terms[max(0, L - 9):])
    return WeightConditionReport(
        ratio_bound=ratio,
        tail_partial=total,
        cauchy_ok=last_decade < 1e-3 * total,
    )


# sums start where every iterated log in the H weight is at least on the
# clamp floor; 16 = ceil(e^e) is safe for all k used here
N0 = 16

_LOG2 = math.log(2.0)


@dataclass
class DivisorSumSeries:
    grid: list
    G: list
    H: list
    psiG: list
    psiH: list
    reference: list
    ratio_G: list
    ratio_H: list


def series(grid, w: IterLogWeight, psi=None, y: int = 1, z: int = 0,
           table: SieveTable | None = None) -> DivisorSumSeries:
    """Partial sums over n <= x, n ≡ z (mod y), n >= N0.

    G:    sum 1/(F(log d(n)) d(n))        (clamped weight)
    H:    sum 1/(F((log 2) log log n) sqrt(log n))
    psiG: sum psi(n)/(F(log d(n)) d(n))   (zero when psi is None)
    psiH: likewise for the H-shape weight
    reference: x / (F(log log x) sqrt(log x))
    """
    grid = sorted(int(x) for x in grid)
    if grid[-1] > SIEVE_LIMIT:
        raise ValueError("grid maximum above the sieve limit")
    x_max = grid[-1]
    t = table if table is not None else sieve(x_max)
    n = np.arange(N0, x_max + 1, dtype=np.int64)
    if y > 1:
        n = n[n % y == z]
    dn = t.d[n].astype(np.int64)
    # F(log d) depends only on d(n): build a lookup over the small range
    d_max = int(dn.max())
    fld = np.array([0.0] + [w(math.log(v)) for v in range(1, d_max + 1)])
    g_terms = 1.0 / (fld[dn] * dn)
    logn = np.log(n.astype(np.float64))
    loglogn = np.log(logn)
    arg = np.maximum(_LOG2 * loglogn, w.x_min)
    fh = _vector_weight(arg, w)
    h_terms = 1.0 / (fh * np.sqrt(logn))
    if psi is not None:
        psin = _vector_psi(psi, n)
        pg_terms = psin * g_terms
        ph_terms = psin * h_terms
    else:
        pg_terms = ph_terms = np.zeros_like(g_terms)
    cg = np.cumsum(g_terms)
    ch = np.cumsum(h_terms)
    cpg = np.cumsum(pg_terms)
    cph = np.cumsum(ph_terms)
    out = DivisorSumSeries(grid=grid, G=[], H=[], psiG=[], psiH=[],
                           reference=[], ratio_G=[], ratio_H=[])
    for x in grid:
        idx = np.searchsorted(n, x, side="right") - 1
        gv = float(cg[idx]) if idx >= 0 else 0.0
        hv = float(ch[idx]) if idx >= 0 else 0.0
        ref = x / (w(math.log(math.log(x))) * math.sqrt(math.log(x)))
        out.G.append(gv)
        out.H.append(hv)
        out.psiG.append(float(cpg[idx]) if idx >= 0 else 0.0)
        out.psiH.append(float(cph[idx]) if idx >= 0 else 0.0)
        out.reference.append(ref)
        out.ratio_G.append(gv / ref)
        out.ratio_H.append(hv / ref)
    return out


def _vector_weight(arg: np.ndarray, w: IterLogWeight) -> np.ndarray:
    x = np.maximum(arg, w.x_min)
    if w.k == 2:
        return x ** (1.0 + w.eps)
    out = x.copy()
    t = x
    for _ in range(w.k - 3):
        t = np.log(t)
        out *= t
    t = np.log(t)
    return out * t ** (1.0 + w.eps)


def _vector_psi(psi, n: np.ndarray) -> np.ndarray:
    if psi.kind == "power":
        return psi.c / n.astype(np.float64) ** psi.exponent
    if psi.kind == "log":
        return psi.c / (n * np.log(n + 1.0) ** psi.exponent)
    return np.array([psi.value(int(v)) for v in n])


def unweighted_dsum(x: int, y: int = 1, z: int = 0,
                    table: SieveTable | None = None) -> Fraction:
    """Exact sum of 1/d(n) over n <= x, n ≡ z (mod y) (sanity row)."""
    t = table if table is not None else sieve(x)
    total = Fraction(0)
    for n in range(1, x + 1):
        if n % y == z % y:
            total += Fraction(1, int(t.d[n]))
    return total


def dsum_ratio(x: int, table: SieveTable | None = None) -> float:
    """S(x) sqrt(log x) / x with S(x) = sum_{n<=x} 1/d(n)."""
    t = table if table is not None else sieve(x)
    s = float(np.sum(1.0 / t.d[1: x + 1]))
    return s * math.sqrt(math.log(x)) / x
