"""Hit searches for moving-target and critical-case inequalities.

All searches evaluate one shared predicate (the candidate-window check)
so the brute-force oracle and the accelerated scan can be compared for
exact set equality, not just approximate agreement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .approx import ApproxFunction, TargetFamily
from .betaspec import BetaValue, resolve_beta
from .fixedpoint import HALF, MASK, PREC, SCALE

_TWON = 2.0**-128

BRUTE_QMAX = 10**7
FAST_QMAX = 10**9


@dataclass(frozen=True)
class HitRecord:
    q: int
    a: int
    distance: float  # ||beta - (a + gamma_{a,q})/q||
    threshold: float  # psi(q)/q

    def as_tuple(self):
        return (self.q, self.a, self.distance, self.threshold)


@dataclass(frozen=True)
class CriticalForm:
    """One of the four endpoint inequalities.

    form 48:  ||q beta + 1/2||         < c/q^mu
    form 49:  ||(q-1/2) beta + 1/2||   < c/q^mu
    form 410: ||q beta||               < c/q^mu
    form 411: ||(q-1/2) beta||         < c/q^mu
    """

    form: int
    mu: float = 1.0
    c: float = 0.5

    def __post_init__(self):
        if self.form not in (48, 49, 410, 411):
            raise ValueError("form must be one of 48, 49, 410, 411")
        if self.mu < 1:
            raise ValueError("mu must be >= 1")
        if self.c <= 0:
            raise ValueError("c must be positive")


def _residue_start(y: int, z: int) -> int:
    if y < 1 or not 0 <= z < y:
        raise ValueError("residue must satisfy y >= 1, 0 <= z < y")
    return z if z >= 1 else y


def _check_family(psi: ApproxFunction, targets: TargetFamily, q_lo: int,
                  q_hi: int) -> None:
    # the C0 certificate; |eps| <= |B|/q and q*psi(q) is monotone for the
    # closed forms, so the endpoints bound the whole range
    for q in (q_lo, q_hi):
        if not targets.check_c0(psi, q):
            raise ValueError(
                f"C0 certificate fails at q={q}: |eps| can exceed C0*psi(q)"
            )


def _window(psi_q: float, c0: float) -> int:
    return int(math.ceil((c0 + 1.0) * psi_q)) + 1


def _eval_window_q(beta_fixed: int, q: int, psi_q: float,
                   targets: TargetFamily, out: list) -> None:
    """The shared per-q predicate: candidate-window evaluation.

    Float expressions match the kernels exactly.
    """
    t = q * beta_fixed
    i, f = t >> PREC, t & MASK
    fd = float(f) * _TWON
    g = targets.gamma(q)
    a0 = math.floor(i + fd - g + 0.5)
    w = _window(psi_q, targets.c0)
    for cand in range(a0 - w, a0 + w + 1):
        a = cand % q
        eps = targets.eps(a, q)
        delta = float(i - cand) + fd - g - eps
        if abs(delta) < psi_q:
            out.append(HitRecord(q, a, abs(delta) / q, psi_q / q))


def _eval_small_q(beta_fixed: int, q: int, psi_q: float,
                  targets: TargetFamily, out: list) -> None:
    """Degenerate case 2w+3 >= q: evaluate every residue a once,
    minimizing |delta| over the integer translates of a."""
    t = q * beta_fixed
    i, f = t >> PREC, t & MASK
    fd = float(f) * _TWON
    g = targets.gamma(q)
    for a in range(q):
        eps = targets.eps(a, q)
        base = i + fd - g - eps  # delta at cand = a is base - a
        k = math.floor((base - a) / q + 0.5)
        best = None
        for kk in (k - 1, k, k + 1):
            delta = float(i - (a + kk * q)) + fd - g - eps
            if best is None or abs(delta) < abs(best):
                best = delta
        if abs(best) < psi_q:
            out.append(HitRecord(q, a, abs(best) / q, psi_q / q))


def _split_degenerate(psi: ApproxFunction, targets: TargetFamily, start: int,
                      q_max: int, y: int) -> int:
    """First q in the residue class from which the window fits inside q."""
    q = start
    while q <= q_max and 2 * _window(psi.value(q), targets.c0) + 3 >= q:
        q += y
    return q


def hits_brute(beta, psi: ApproxFunction, targets: TargetFamily, q_max: int,
               residue=(1, 0)) -> list[HitRecord]:
    """Oracle enumeration: direct per-q state, Python evaluation."""
    bv = beta if isinstance(beta, BetaValue) else resolve_beta(beta)
    if q_max > BRUTE_QMAX:
        raise ValueError(f"q_max > {BRUTE_QMAX} not supported in oracle mode")
    y, z = residue
    start = _residue_start(y, z)
    if start > q_max:
        return []
    _check_family(psi, targets, start, q_max)
    out: list[HitRecord] = []
    for q in range(start, q_max + 1, y):
        psi_q = psi.value(q)
        if 2 * _window(psi_q, targets.c0) + 3 >= q:
            _eval_small_q(bv.fixed, q, psi_q, targets, out)
        else:
            _eval_window_q(bv.fixed, q, psi_q, targets, out)
    return out


def hits_fast(beta, psi: ApproxFunction, targets: TargetFamily, q_max: int,
              residue=(1, 0), threads: int = 1, impl=None) -> list[HitRecord]:
    """Accelerated enumeration; identical hit set to hits_brute."""
    bv = beta if isinstance(beta, BetaValue) else resolve_beta(beta)
    if q_max > FAST_QMAX:
        raise ValueError(f"q_max > {FAST_QMAX} not supported")
    y, z = residue
    start = _residue_start(y, z)
    if start > q_max:
        return []
    _check_family(psi, targets, start, q_max)
    use = impl if impl is not None else kernels.get_impl()

    out: list[HitRecord] = []
    q_split = _split_degenerate(psi, targets, start, q_max, y)
    for q in range(start, min(q_split, q_max + 1), y):
        _eval_small_q(bv.fixed, q, psi.value(q), targets, out)
    if q_split <= q_max:
        pk, pa, pb, ptab = psi.kernel_args(q_max)
        gk, gx, gtab, ek, eb, c0 = targets.kernel_args(q_max)
        qs, aa, dd, tt = kernels.scan_move_range(
            use, bv.fixed, q_split, q_max, y,
            pk, pa, pb, ptab, gk, gx, gtab, ek, eb, c0, threads=threads,
        )
        out.extend(
            HitRecord(int(q), int(a), float(d), float(t))
            for q, a, d, t in zip(qs, aa, dd, tt)
        )
    return out


def _crit_shift(form: int, beta_fixed: int) -> tuple[int, int]:
    """(128-bit fractional shift, integer shift) added to q*beta."""
    if form == 48:
        return HALF, 0
    if form == 410:
        return 0, 0
    half_beta = beta_fixed >> 1
    if form == 49:
        return (HALF - half_beta) & MASK, 0  # 1/2 - beta/2 in (0,1/2)
    return (SCALE - half_beta) & MASK, -1  # -beta/2 = -1 + (1 - beta/2)


def critical_hits(beta, cf: CriticalForm, q_max: int, residue=(1, 0),
                  threads: int = 1, impl=None) -> list[HitRecord]:
    """All q <= q_max in the residue class satisfying the chosen form."""
    bv = beta if isinstance(beta, BetaValue) else resolve_beta(beta)
    if q_max > FAST_QMAX:
        raise ValueError(f"q_max > {FAST_QMAX} not supported")
    y, z = residue
    start = _residue_start(y, z)
    if start > q_max:
        return []
    use = impl if impl is not None else kernels.get_impl()
    shf, sh_int = _crit_shift(cf.form, bv.fixed)
    qs, aa, dd, tt = kernels.scan_crit_range(
        use, bv.fixed, start, q_max, y, shf, sh_int, cf.c, cf.mu, 0,
        threads=threads,
    )
    return [
        HitRecord(int(q), int(a), float(d), float(t))
        for q, a, d, t in zip(qs, aa, dd, tt)
    ]


def critical_hits_brute(beta, cf: CriticalForm, q_max: int,
                        residue=(1, 0)) -> list[HitRecord]:
    """Oracle for critical_hits: direct big-integer state per q."""
    bv = beta if isinstance(beta, BetaValue) else resolve_beta(beta)
    if q_max > BRUTE_QMAX:
        raise ValueError(f"q_max > {BRUTE_QMAX} not supported in oracle mode")
    y, z = residue
    start = _residue_start(y, z)
    shf, sh_int = _crit_shift(cf.form, bv.fixed)
    out: list[HitRecord] = []
    for q in range(start, q_max + 1, y):
        t = q * bv.fixed
        i, f = t >> PREC, t & MASK
        u = f + shf
        c1 = 1 if u >= SCALE else 0
        u &= MASK
        dist = SCALE - u if u >= HALF else u
        thr = cf.c / (float(q) ** cf.mu)
        thr_i = MASK if thr >= 1.0 else int(thr * 2.0**128)
        if dist < thr_i:
            n_near = i + sh_int + c1 + (1 if u >= HALF else 0)
            out.append(HitRecord(q, n_near % q, float(dist) * _TWON, thr))
    return out


@dataclass
class ReductionCheck:
    """Report for the odd-denominator reformulation of form 4.9.

    Direct hits of ||(q - 1/2) beta + 1/2|| < c/q are compared with hits
    of ||q' (beta/2) + 1/2|| < 2c/(q'+1) over odd q' = 2q - 1: the two
    predicates are algebraically identical under q' = 2q - 1, and the
    per-q factor 2q'/(q'+1) = 2 - 2/(q'+1) stays within the bracket
    c * [1, 2] of the direct constant.
    """

    c: float
    q_max: int
    direct: list = field(repr=False, default_factory=list)
    reduced: list = field(repr=False, default_factory=list)
    exact_bijection: bool = False
    bracket_low_ok: bool = False  # reduced at factor 1 maps into direct
    bracket_high_ok: bool = False  # direct maps into reduced at factor 2
    boundary_count: int = 0  # hits within 1e-25 of their threshold

    @property
    def passed(self) -> bool:
        return self.exact_bijection and self.bracket_low_ok and self.bracket_high_ok


def reduce_49(beta, c: float, q_max: int, threads: int = 1,
              impl=None) -> ReductionCheck:
    """Check the doubling reformulation of form 4.9 at mu = 1."""
    bv = beta if isinstance(beta, BetaValue) else resolve_beta(beta)
    if c <= 0:
        raise ValueError("c must be positive")
    # clear the last bit so beta/2 is representable and the two scans
    # see bit-identical circle states
    even = bv.fixed & ~1
    if even == 0:
        raise ValueError("beta too small at this precision")
    use = impl if impl is not None else kernels.get_impl()
    half_beta = even >> 1

    def crit(step_fixed, q_lo, q_hi, y, shf, sh_int, c_eff, den_off):
        qs, aa, dd, tt = kernels.scan_crit_range(
            use, step_fixed, q_lo, q_hi, y, shf, sh_int, c_eff, 1.0,
            den_off, threads=threads,
        )
        return [
            HitRecord(int(q), int(a), float(d), float(t))
            for q, a, d, t in zip(qs, aa, dd, tt)
        ]

    # direct: ||q beta + (1/2 - beta/2)|| < c/q
    direct = crit(even, 1, q_max, 1, (HALF - half_beta) & MASK, 0, c, 0)
    # reduced: odd q', gamma = beta/2, threshold 2c/(q'+1)
    reduced = crit(half_beta, 1, 2 * q_max - 1, 2, HALF, 0, 2.0 * c, 1)
    # factor-1 lower end of the bracket: threshold c/q' over odd q'
    reduced_low = crit(half_beta, 1, 2 * q_max - 1, 2, HALF, 0, c, 0)

    direct_q = {h.q for h in direct}
    reduced_q = {h.q for h in reduced}
    exact = reduced_q == {2 * q - 1 for q in direct_q} and all(
        hd.distance == hr.distance and hd.threshold == hr.threshold
        for hd, hr in zip(direct, reduced)
    )
    low_ok = all((h.q + 1) // 2 in direct_q for h in reduced_low)
    high_ok = all(2 * q - 1 in reduced_q for q in direct_q)
    boundary = sum(
        1 for h in direct + reduced if abs(h.distance - h.threshold) < 1e-25
    )
    return ReductionCheck(
        c=c, q_max=q_max, direct=direct, reduced=reduced,
        exact_bijection=exact, bracket_low_ok=low_ok,
        bracket_high_ok=high_ok, boundary_count=boundary,
    )
