"""Machine-checked replay of the inequality chain from the cosine-target
witness down to the final two-sine bound 8*pi*c.

Every step is stored with an explicit name, left/right value and margin,
so no constant stays silent.  Steps marked "for j large enough" in the
derivation simply fail below the measured threshold; find_threshold
records the smallest passing j instead of assuming one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .betaspec import BetaValue
from .fixedpoint import frac_from_fraction
from .rubin import RubinParams, f_value, make_params

_PI = math.pi


@dataclass(frozen=True)
class ChainWitness:
    j: int
    k: int
    m: int
    x: float  # (rho - 1)/4
    B: float  # rho(rho-1)/pi


@dataclass(frozen=True)
class ChainStep:
    name: str
    lhs: float
    rhs: float
    passed: bool
    margin: float  # rhs - lhs


@dataclass
class ChainReport:
    steps: list = field(default_factory=list)
    final_pass: bool = False  # the end-to-end 8*pi*c bound
    all_steps_pass: bool = False  # every intermediate inequality too
    j: int = 0

    def step(self, name: str):
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)


def _v_double(kk: int, x: float, B: float, Q: int) -> float:
    """The cosine-perturbed target value; the single shared expression
    used by both the constructor and the checker."""
    return (kk + x) / Q - (B / (Q * Q)) * math.cos(4.0 * _PI * kk / Q)


def construct_exact_solution(n: int, rho: float, j: int, k: int):
    """A beta for which the witness identity is exactly zero.

    beta := 4 * frac(v) with v = (k+x)/Q - (B/Q^2) cos(4 pi k/Q) and
    Q = 2j + n - 1; this requires frac(v) in (0, 1/4), so k is nudged by
    the smallest |s| that achieves it (degenerate beta in {0, 1/2} is
    skipped as well).  Returns (BetaValue, ChainWitness).
    """
    Q = 2 * j + n - 1
    if Q < 3:
        raise ValueError("need 2j + n - 1 >= 3")
    if not 0 <= k < Q:
        raise ValueError("k must lie in [0, Q)")
    x = (rho - 1.0) / 4.0
    B = rho * (rho - 1.0) / _PI
    for step in range(2 * Q + 1):
        s = (step + 1) // 2 * (1 if step % 2 else -1)
        kk = k + s
        v = _v_double(kk, x, B, Q)
        vf = Fraction(v)
        fl = vf.numerator // vf.denominator
        fr = vf - fl
        if not Fraction(0) < fr < Fraction(1, 4):
            continue
        beta_f = 4 * fr
        if beta_f in (Fraction(0), Fraction(1, 2)):
            continue
        fixed = frac_from_fraction(beta_f)
        if Fraction(fixed, 1 << 128) != beta_f:
            continue  # not representable at 128 bits (cannot happen for doubles)
        bv = BetaValue(fixed=fixed, source=f"chain(n={n},rho={rho},j={j},k={kk})",
                       exact_rational=beta_f)
        return bv, ChainWitness(j=j, k=kk, m=-fl, x=x, B=B)
    raise ValueError("no non-degenerate exact solution near the requested k")


def verify_chain(p: RubinParams, c: float, w: ChainWitness) -> ChainReport:
    """Evaluate every displayed inequality of the reduction.

    Quantities linear in beta are computed as exact rationals (beta is
    dyadic), transcendental terms as doubles converted exactly, so small
    left-hand sides are never lost to cancellation.
    """
    if c <= 0:
        raise ValueError("c must be positive")
    j, k = w.j, w.k
    Q = 2 * j + p.n - 1
    rho = p.rho
    rho2 = rho * (rho - 1.0)
    if abs(w.x - (rho - 1.0) / 4.0) > 1e-12 or abs(w.B - rho2 / _PI) > 1e-12:
        raise ValueError("witness is inconsistent with the parameters")

    beta = p.beta.fraction
    beta_f = p.beta.as_float
    rep = ChainReport(j=j)

    def add(name, lhs, rhs):
        lhs = float(lhs)
        rhs = float(rhs)
        rep.steps.append(ChainStep(name, lhs, rhs, lhs <= rhs, rhs - lhs))

    v = _v_double(k, w.x, w.B, Q)
    # the integer shift is existentially quantified: take the best of
    # the two nearest
    base = beta / 4 - Fraction(v)
    m0 = round(base)
    m = min((m0 - 1, m0, m0 + 1), key=lambda mm: abs(base - mm))
    d0 = abs(base - m)

    add("key-identity", d0, c / (j * j))
    add("sd_1''", 4 * d0, 4.0 * c / (j * j))

    cos_k = math.cos(4.0 * _PI * k / Q)
    cos_b = math.cos(_PI * beta_f)
    cos_shift = math.cos(beta_f * _PI - _PI * (rho - 1.0) / Q)
    add("eps1", abs(cos_k - cos_shift), (4.0 * _PI * c + abs(rho2)) / (j * j))
    c_rho_n = (4.0 * _PI * c + abs(rho2)) + _PI * abs(rho - 1.0) / 2.0
    add("eps2", abs(cos_k - cos_b), c_rho_n / j)
    eps3 = (4.0 * rho2 / (_PI * Q * Q)) * (cos_k - cos_b) * (j * j)
    add("eps3", abs(eps3), c)

    sin_half = math.sin(_PI * (beta_f + 0.5))
    lin = beta - (Fraction(rho - 1.0) + 4 * k) / Q - 4 * m
    term5 = Fraction((4.0 * rho2 / (_PI * Q * Q)) * sin_half)
    add("5c-step", abs(lin + term5), 5.0 * c / (j * j))

    lin_q = Q * beta - Fraction(rho - 1.0) - 4 * k - 4 * m * Q
    term_q = Fraction((4.0 * rho2 / (_PI * Q)) * sin_half)
    add("sd_2", abs(lin_q + term_q), 10.0 * c / j)

    add("coeff-swap",
        abs(4.0 * rho2 / Q - 2.0 * rho2 / j) * abs(sin_half) / _PI,
        c / j)

    term_j = Fraction((2.0 * rho2 / (_PI * j)) * sin_half)
    add("12c-step", abs(lin_q + term_j), 12.0 * c / j)

    lin_3 = j * beta - p.r0 - 2 * k - 2 * m * Q
    term_3 = Fraction((rho2 / (_PI * j)) * sin_half)
    add("sd_3", abs(lin_3 + term_3), 6.0 * c / j)

    c_rho = abs(rho2) / _PI
    add("jbeta-r0", abs(lin_3), (6.0 * c + c_rho) / j)

    # accurate sines of the two model angles via the fixed-point state
    s0, s1 = _model_sines(p, j)
    add("sd_5", abs(s0 + (rho2 / j) * sin_half), 7.0 * _PI * c / j)
    add("sd_6-residual", abs(rho2 * (sin_half - s1) / j), _PI * c / j)
    add("final", abs(f_value(p, j)), 8.0 * _PI * c)

    rep.final_pass = rep.step("final").passed
    rep.all_steps_pass = all(s.passed for s in rep.steps)
    return rep


def _model_sines(p: RubinParams, j: int):
    """(sin pi(j beta - r0), sin pi(j beta - r1)) at full precision."""
    from .fixedpoint import MASK, PREC
    from .rubin import _sine_term

    t = j * p.beta.fixed
    f = t & MASK
    par = (t >> PREC) & 1
    return (
        _sine_term(f, par, p.r0_fixed, p.r0_par),
        _sine_term(f, par, p.r1_fixed, p.r1_par),
    )


def run_witness(n: int, rho: float, j: int, k: int, c: float) -> ChainReport:
    """Construct an exact witness at (n, rho, j, k) and verify the chain."""
    bv, w = construct_exact_solution(n, rho, j, k)
    p = make_params(n, rho, bv)
    return verify_chain(p, c, w)


def find_threshold(n: int, rho: float, c: float, j_values,
                   k_of_j=None) -> tuple[int | None, list[ChainReport]]:
    """Smallest tested j from which the whole chain passes onward."""
    reports = []
    for j in sorted(j_values):
        k = k_of_j(j) if k_of_j else (2 * j + n - 1) // 3
        try:
            reports.append(run_witness(n, rho, j, k, c))
        except ValueError:
            continue
    thr = None
    for rep in reversed(reports):
        if rep.all_steps_pass:
            thr = rep.j
        else:
            break
    return thr, reports
