"""Pure-Python scan kernels.

Bit-compatible fallback for the compiled extension: every floating-point
operation here mirrors the C code in _fastcore.pyx in the same order, so
both implementations produce identical hit sets and identical recorded
values.  This module is selected when the extension is missing or when
SMALLDIV_FORCE_PURE=1 is set; it is one to three orders of magnitude
slower on large ranges.
"""

from __future__ import annotations

import math

import numpy as np

IMPL = "pure"

_PREC = 128
_SCALE = 1 << _PREC
_MASK = _SCALE - 1
_HALF = 1 << (_PREC - 1)
_TWON = 2.0**-128
_TWOP = 2.0**128
_Q48 = 2.0**48
_IQ48 = 2.0**-48

_sin = math.sin
_cos = math.cos
_floor = math.floor
_PI = math.pi


def scan_f(step, f0, par0, j_lo, j_hi, r0p, r0f, r1p, r1f, rho2, c):
    """All j in [j_lo, j_hi] with |j sin(pi(j*beta-r0)) + rho2 sin(pi(j*beta-r1))| < c.

    State (f0, par0) is (frac(j_lo*beta) in 2**-128 units, parity of
    floor(j_lo*beta)); step is beta itself in the same units (beta < 1).
    """
    out_j, out_F, out_D = [], [], []
    f = f0
    par = par0
    absr = abs(rho2)
    for j in range(j_lo, j_hi + 1):
        d0 = (f - r0f) & _MASK
        dist0 = _SCALE - d0 if d0 >= _HALF else d0
        s = (c + absr) / j
        full = True
        if s < 0.05:
            limit = int((0.5 * s + 1e-9) * _TWOP)
            if dist0 > limit:
                full = False
        if full:
            b0 = 1 if f < r0f else 0
            np0 = 1 if d0 >= _HALF else 0
            v0 = -(float(_SCALE - d0) * _TWON) if np0 else float(d0) * _TWON
            s0 = _sin(_PI * v0)
            if (par ^ r0p ^ b0 ^ np0) & 1:
                s0 = -s0
            d1 = (f - r1f) & _MASK
            b1 = 1 if f < r1f else 0
            np1 = 1 if d1 >= _HALF else 0
            v1 = -(float(_SCALE - d1) * _TWON) if np1 else float(d1) * _TWON
            s1 = _sin(_PI * v1)
            if (par ^ r1p ^ b1 ^ np1) & 1:
                s1 = -s1
            F = j * s0 + rho2 * s1
            if abs(F) < c:
                out_j.append(j)
                out_F.append(F)
                out_D.append(float(dist0) * _TWON)
        f += step
        if f >= _SCALE:
            f -= _SCALE
            par ^= 1
    return (
        np.asarray(out_j, dtype=np.int64),
        np.asarray(out_F, dtype=np.float64),
        np.asarray(out_D, dtype=np.float64),
    )


def scan_crit(step, step_int, f0, i0, q_lo, q_hi, y, shf, sh_int, c_eff, mu, den_off):
    """All q = q_lo, q_lo+y, ... <= q_hi with ||q*beta + shift|| < c_eff/(q+den_off)**mu.

    shift = sh_int + shf/2**128 covers the half-integer and -beta/2 forms.
    Records (q, nearest-integer residue a, distance, threshold).
    """
    out_q, out_a, out_d, out_t = [], [], [], []
    f = f0
    i = i0
    q = q_lo
    while q <= q_hi:
        t = f + shf
        c1 = 1 if t >= _SCALE else 0
        u = t & _MASK
        dist = _SCALE - u if u >= _HALF else u
        thr = c_eff / (float(q + den_off) ** mu)
        thr_i = _MASK if thr >= 1.0 else int(thr * _TWOP)
        if dist < thr_i:
            n_near = i + sh_int + c1 + (1 if u >= _HALF else 0)
            out_q.append(q)
            out_a.append(n_near % q)
            out_d.append(float(dist) * _TWON)
            out_t.append(thr)
        t = f + step
        f = t & _MASK
        i += step_int + (t >> _PREC)
        q += y
    return (
        np.asarray(out_q, dtype=np.int64),
        np.asarray(out_a, dtype=np.int64),
        np.asarray(out_d, dtype=np.float64),
        np.asarray(out_t, dtype=np.float64),
    )


def _psi_eval(q, kind, pa, pb, table):
    if kind == 0:
        return pa / (q**pb)
    if kind == 1:
        return pa / (q * (math.log(q + 1.0) ** pb))
    return table[q]


def _eps_eval(kind, B, a, q):
    if kind == 0:
        return 0.0
    e = -(B / q) * _cos(4.0 * _PI * a / q)
    if kind == 2:
        e = _floor(e * _Q48 + 0.5) * _IQ48
    return e


def scan_move(step, step_int, f0, i0, q_lo, q_hi, y,
              psi_kind, psi_a, psi_b, psi_table,
              gamma_kind, gamma_x, gamma_table,
              eps_kind, eps_B, c0):
    """Candidate-window scan for ||beta - (a+gamma_q+eps_{a,q})/q|| < psi(q)/q.

    Caller guarantees the window 2*W+1 with W = ceil((c0+1)psi)+1 is
    smaller than q for every q in range (small q go through the
    exhaustive path in scans.py).
    """
    out_q, out_a, out_d, out_t = [], [], [], []
    f = f0
    i = i0
    q = q_lo
    while q <= q_hi:
        psi = _psi_eval(q, psi_kind, psi_a, psi_b, psi_table)
        g = gamma_x if gamma_kind == 0 else gamma_table[q]
        fd = float(f) * _TWON
        a0 = _floor(i + fd - g + 0.5)
        w = int(math.ceil((c0 + 1.0) * psi)) + 1
        for A in range(a0 - w, a0 + w + 1):
            a = A % q
            eps = _eps_eval(eps_kind, eps_B, a, q)
            delta = float(i - A) + fd - g - eps
            if abs(delta) < psi:
                out_q.append(q)
                out_a.append(a)
                out_d.append(abs(delta) / q)
                out_t.append(psi / q)
        t = f + step
        f = t & _MASK
        i += step_int + (t >> _PREC)
        q += y
    return (
        np.asarray(out_q, dtype=np.int64),
        np.asarray(out_a, dtype=np.int64),
        np.asarray(out_d, dtype=np.float64),
        np.asarray(out_t, dtype=np.float64),
    )


def sieve_d(n):
    """Divisor-count table d[0..n] (d[0] = 0)."""
    d = np.zeros(n + 1, dtype=np.int32)
    for i in range(1, n + 1):
        d[i::i] += 1
    return d


def sieve_phi(n):
    """Euler totient table phi[0..n] (phi[0] = 0)."""
    phi = np.arange(n + 1, dtype=np.int64)
    if n >= 1:
        phi[1] = 1
    is_p = np.ones(n + 1, dtype=bool)
    if n >= 0:
        is_p[:2] = False
    for p in range(2, n + 1):
        if is_p[p]:
            is_p[p * p:: p] = False
            phi[p::p] -= phi[p::p] // p
    return phi


def arc_inter(alo_hi, alo_lo, ahi_hi, ahi_lo, am, blo_hi, blo_lo, bhi_hi, bhi_lo, bm):
    """Total overlap length of two sorted disjoint segment lists.

    Segments come as (hi, lo) uint64 limb arrays of 128-bit scaled
    endpoints; am/bm are the cross multipliers onto the common
    denominator.  Returns the exact total as a Python int.
    """
    na = len(alo_hi)
    nb = len(blo_hi)
    al = [(int(alo_hi[k]) << 64 | int(alo_lo[k])) * am for k in range(na)]
    ah = [(int(ahi_hi[k]) << 64 | int(ahi_lo[k])) * am for k in range(na)]
    bl = [(int(blo_hi[k]) << 64 | int(blo_lo[k])) * bm for k in range(nb)]
    bh = [(int(bhi_hi[k]) << 64 | int(bhi_lo[k])) * bm for k in range(nb)]
    tot = 0
    ia = ib = 0
    while ia < na and ib < nb:
        lo = al[ia] if al[ia] > bl[ib] else bl[ib]
        hi = ah[ia] if ah[ia] < bh[ib] else bh[ib]
        if lo < hi:
            tot += hi - lo
        if ah[ia] < bh[ib]:
            ia += 1
        else:
            ib += 1
    return tot
