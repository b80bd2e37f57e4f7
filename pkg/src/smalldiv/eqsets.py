"""Arc unions E_q and the finite lemma checks built on them.

E_q is the union of q arcs of radius psi(q)/q centered at
(a + gamma_q + eps_{a,q})/q.  Everything here is exact: the registry
target values are IEEE doubles, i.e. dyadic rationals, so measures,
intersections and the overlap bound are computed with integer/rational
arithmetic and compared with zero tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .approx import ApproxFunction, TargetFamily
from .torus import FULL_CIRCLE, IntervalUnion, TorusInterval, intersect, union_measure

_GRID = 48  # quantization grid 2**-48 used by the fast sweep


def _centers_scaled(q: int, targets: TargetFamily):
    """Exact arc centers as integers num/(q*2**t): returns (nums, 2**t)."""
    parts = []
    max_den = 1
    for a in range(q):
        n, d = 0, 1
        for v in (targets.gamma(q), targets.eps(a, q)):
            vn, vd = float(v).as_integer_ratio()
            # d, vd are powers of two
            if vd > d:
                n, d = n * (vd // d), vd
            n += vn * (d // vd)
        parts.append((a, n, d))
        if d > max_den:
            max_den = d
    nums = [a * max_den + n * (max_den // d) for a, n, d in parts]
    return nums, max_den


def build_eq_set(q: int, psi: ApproxFunction, targets: TargetFamily):
    """E_q as a canonical IntervalUnion (FULL when psi(q)/q >= 1/2)."""
    if q < 1:
        raise ValueError("q must be >= 1")
    psi_q = Fraction(psi.value(q))
    radius = psi_q / q
    if radius >= Fraction(1, 2):
        return IntervalUnion.full()
    nums, den = _centers_scaled(q, targets)
    arcs = [TorusInterval(Fraction(n, q * den), radius) for n in nums]
    return IntervalUnion.from_arcs(arcs)


@dataclass(frozen=True)
class EqSizeReport:
    q: int
    precondition_value: Fraction  # (2 C0 + 2) psi(q)
    precondition_ok: bool
    disjoint: bool  # no two arcs share interior points
    measure: Fraction
    matches_2psi: bool


def check_size(q: int, psi: ApproxFunction, targets: TargetFamily) -> EqSizeReport:
    """Exact disjointness and measure check for E_q.

    Uses the circular-gap identity m(E_q) = sum_i min(gap_i, 2 psi(q)/q)
    over sorted centers, which avoids building the union object.
    """
    psi_q = Fraction(psi.value(q))
    pre = (2 * Fraction(targets.c0) + 2) * psi_q
    nums, den = _centers_scaled(q, targets)
    M = q * den
    nums = sorted(n % M for n in nums)
    # arc length 2 psi(q)/q scaled by M: 2 * psi_q * den
    two_r_num = 2 * psi_q.numerator * den
    two_r_den = psi_q.denominator
    measure_num = 0  # in units of 1/(M * two_r_den)
    disjoint = True
    for i in range(q):
        gap = (nums[(i + 1) % q] - nums[i]) % M if q > 1 else M
        g_scaled = gap * two_r_den
        if g_scaled < two_r_num:
            disjoint = False
            measure_num += g_scaled
        else:
            measure_num += two_r_num
    measure = Fraction(measure_num, M * two_r_den)
    return EqSizeReport(
        q=q,
        precondition_value=pre,
        precondition_ok=pre < 1,
        disjoint=disjoint,
        measure=measure,
        matches_2psi=measure == 2 * psi_q,
    )


@dataclass(frozen=True)
class OverlapReport:
    q: int
    r: int
    gcd_qr: int
    measure_q: Fraction
    measure_r: Fraction
    measure_intersection: Fraction
    Delta: Fraction  # 2 max(psi(q)/q, psi(r)/r)
    delta: Fraction  # 2 min(psi(q)/q, psi(r)/r)
    bound: Fraction  # 4 (C0+1)(m_q m_r + (gcd/q) m_q)
    satisfied: bool


def _make_report(q, r, c0, psi_q, psi_r, m_q, m_r, m_int) -> OverlapReport:
    g = math.gcd(q, r)
    bound = 4 * (Fraction(c0) + 1) * (m_q * m_r + Fraction(g, q) * m_q)
    return OverlapReport(
        q=q, r=r, gcd_qr=g,
        measure_q=m_q, measure_r=m_r, measure_intersection=m_int,
        Delta=2 * max(psi_q / q, psi_r / r),
        delta=2 * min(psi_q / q, psi_r / r),
        bound=bound, satisfied=m_int <= bound,
    )


def overlap_report(q: int, r: int, psi: ApproxFunction,
                   targets: TargetFamily) -> OverlapReport:
    """Exact m(E_q ∩ E_r) against the 4(C0+1) bound; requires r < q."""
    if not 1 <= r < q:
        raise ValueError("need 1 <= r < q")
    eq = build_eq_set(q, psi, targets)
    er = build_eq_set(r, psi, targets)
    return _make_report(
        q, r, targets.c0,
        Fraction(psi.value(q)), Fraction(psi.value(r)),
        union_measure(eq), union_measure(er),
        union_measure(intersect(eq, er)),
    )


def _grid_int(x: float, what: str) -> int:
    v = x * 2.0**_GRID
    n = int(v)
    if float(n) != v:
        raise ValueError(f"{what} is not on the 2**-{_GRID} grid")
    return n


def _segments_scaled(q: int, psi: ApproxFunction, targets: TargetFamily):
    """E_q as merged integer segments with denominator q*2**48.

    Requires psi(q), gamma_q and eps values on the 2**-48 grid
    (table psi + quantized targets); raises ValueError otherwise.
    """
    P = _grid_int(psi.value(q), f"psi({q})")
    G = _grid_int(targets.gamma(q), f"gamma({q})")
    M = q << _GRID
    if 2 * P >= M:
        return [(0, M)]
    segs = []
    for a in range(q):
        E = _grid_int(targets.eps(a, q), f"eps({a},{q})")
        c = ((a << _GRID) + G + E) % M
        lo = (c - P) % M
        hi = lo + 2 * P
        if hi > M:
            segs.append((lo, M))
            segs.append((0, hi - M))
        else:
            segs.append((lo, hi))
    segs.sort()
    out = []
    for lo, hi in segs:
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return out


def _limbs(segs):
    lo = [s[0] for s in segs]
    hi = [s[1] for s in segs]
    u64 = (1 << 64) - 1
    return (
        np.array([x >> 64 for x in lo], dtype=np.uint64),
        np.array([x & u64 for x in lo], dtype=np.uint64),
        np.array([x >> 64 for x in hi], dtype=np.uint64),
        np.array([x & u64 for x in hi], dtype=np.uint64),
    )


def quantized_family(x: float, B: float, c: float, q_max: int):
    """The cosine-perturbed family snapped to the 2**-48 grid.

    Returns (psi, targets) usable with the fast overlap sweep: a table
    psi with psi(q) = round(c/q * 2**48)/2**48, quantized gamma and the
    grid-rounded cosine eps.  C0 keeps its |B|/c certificate (check_c0
    accounts for the half-step rounding slack).
    """
    if q_max < 1:
        raise ValueError("q_max must be >= 1")
    scale = 2.0**_GRID
    vals = [math.floor(c / q * scale + 0.5) / scale for q in range(1, q_max + 1)]
    if vals[-1] <= 0:
        raise ValueError("psi underflows the grid at q_max")
    psi = ApproxFunction.table(vals)
    targets = TargetFamily(
        gamma_kind="constant",
        gamma_x=math.floor(x * scale + 0.5) / scale,
        eps_kind="zero" if B == 0 else "cosine_q48",
        eps_B=float(B),
        # tiny bump so the certificate absorbs the half-step grid rounding
        c0=(abs(float(B)) + 2.0**-40) / float(c),
    )
    return psi, targets


def overlap_sweep(psi: ApproxFunction, targets: TargetFamily,
                  q_lo: int = 50, q_hi: int = 400,
                  impl=None) -> list[OverlapReport]:
    """All pairs q_lo <= r < q <= q_hi, exact, via the scaled-integer
    fast path (grid-quantized families only)."""
    use = impl if impl is not None else kernels.get_impl()
    segs = {}
    limbs = {}
    meas = {}
    psi_f = {}
    for q in range(q_lo, q_hi + 1):
        s = _segments_scaled(q, psi, targets)
        segs[q] = s
        limbs[q] = _limbs(s)
        meas[q] = Fraction(sum(h - l for l, h in s), q << _GRID)
        psi_f[q] = Fraction(psi.value(q))
    reports = []
    for q in range(q_lo + 1, q_hi + 1):
        lq = limbs[q]
        for r in range(q_lo, q):
            lr = limbs[r]
            tot = use.arc_inter(lq[0], lq[1], lq[2], lq[3], r,
                                lr[0], lr[1], lr[2], lr[3], q)
            m_int = Fraction(tot, (q * r) << _GRID)
            reports.append(_make_report(
                q, r, targets.c0, psi_f[q], psi_f[r],
                meas[q], meas[r], m_int,
            ))
    return reports


@dataclass(frozen=True)
class DensityReport:
    q: int
    ratio: Fraction  # m(E_q ∩ U) / (m(E_q) m(U))
    passes_half: bool


def density_report(q: int, U, psi: ApproxFunction,
                   targets: TargetFamily) -> DensityReport:
    m_u = union_measure(U)
    if m_u == 0:
        raise ValueError("U must be nonempty")
    eq = build_eq_set(q, psi, targets)
    m_eq = union_measure(eq)
    ratio = union_measure(intersect(eq, U)) / (m_eq * m_u)
    return DensityReport(q=q, ratio=ratio, passes_half=ratio >= Fraction(1, 2))


def density_sweep(U, psi: ApproxFunction, targets: TargetFamily,
                  q_values) -> tuple[int | None, list[DensityReport]]:
    """Reports for each q; also the smallest q from which passes_half
    holds for the rest of the sweep (None if it never stabilizes)."""
    reports = [density_report(q, U, psi, targets) for q in q_values]
    q0 = None
    for rep in reversed(reports):
        if rep.passes_half:
            q0 = rep.q
        else:
            break
    return q0, reports


def tail_union_measure(q0: int, q1: int, psi: ApproxFunction,
                       targets: TargetFamily, U, residue=(1, 0)) -> Fraction:
    """m(U ∩ union of E_q for q0 <= q <= q1 in the residue class), exact."""
    if q0 > q1:
        raise ValueError("need q0 <= q1")
    y, z = residue
    acc = IntervalUnion.empty()
    q = q0 + ((z - q0) % y)
    while q <= q1:
        if q >= 1:
            eq = build_eq_set(q, psi, targets)
            if isinstance(eq, IntervalUnion) and eq.is_full:
                acc = IntervalUnion.full()
                break
            acc = acc.union(eq)
        q += y
    return union_measure(intersect(acc, U))
