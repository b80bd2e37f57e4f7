"""Kernel dispatch: compiled extension when available, pure Python otherwise.

Set SMALLDIV_FORCE_PURE=1 to force the fallback (useful for checking
that both implementations agree bit for bit).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _purecore
from .fixedpoint import MASK, PREC

if os.environ.get("SMALLDIV_FORCE_PURE") == "1":
    _impl = _purecore
else:
    try:
        from . import _fastcore as _impl
    except ImportError:
        _impl = _purecore

IMPL = _impl.IMPL


def get_impl(force: str | None = None):
    """Return the kernel module: active one, or 'pure'/'fast' explicitly."""
    if force is None:
        return _impl
    if force == "pure":
        return _purecore
    if force == "fast":
        from . import _fastcore

        return _fastcore
    raise ValueError(f"unknown implementation {force!r}")


def resolve_threads(threads: int) -> int:
    # 0 means auto-detect
    if threads < 0:
        raise ValueError("threads must be >= 0")
    if threads == 0:
        return min(os.cpu_count() or 1, 8)
    return threads


def _advance(beta_fixed: int, k: int) -> tuple[int, int]:
    """(floor(k*beta), frac(k*beta) in fixed point) from the exact state."""
    t = k * beta_fixed
    return t >> PREC, t & MASK


def scan_f_range(impl, beta_fixed, j_lo, j_hi, r0p, r0f, r1p, r1f, rho2, c,
                 threads=1):
    """Sharded scan_f over [j_lo, j_hi]; results concatenated in j order."""
    nt = resolve_threads(threads)
    total = j_hi - j_lo + 1
    if total <= 0:
        return (np.empty(0, np.int64), np.empty(0, np.float64),
                np.empty(0, np.float64))
    nt = max(1, min(nt, total // 4096 + 1))
    bounds = np.linspace(j_lo, j_hi + 1, nt + 1).astype(np.int64)

    def run(k):
        lo = int(bounds[k])
        hi = int(bounds[k + 1]) - 1
        if hi < lo:
            return (np.empty(0, np.int64), np.empty(0, np.float64),
                    np.empty(0, np.float64))
        ip, f0 = _advance(beta_fixed, lo)
        return impl.scan_f(beta_fixed, f0, ip & 1, lo, hi,
                           r0p, r0f, r1p, r1f, rho2, c)

    if nt == 1:
        parts = [run(0)]
    else:
        with ThreadPoolExecutor(max_workers=nt) as ex:
            parts = list(ex.map(run, range(nt)))
    return tuple(np.concatenate([p[k] for p in parts]) for k in range(3))


def scan_crit_range(impl, beta_fixed, q_lo, q_hi, y, shf, sh_int, c_eff, mu,
                    den_off, threads=1):
    """Sharded scan_crit over q = q_lo, q_lo+y, ... <= q_hi."""
    nt = resolve_threads(threads)
    if q_hi < q_lo:
        return (np.empty(0, np.int64), np.empty(0, np.int64),
                np.empty(0, np.float64), np.empty(0, np.float64))
    nsteps = (q_hi - q_lo) // y + 1
    nt = max(1, min(nt, nsteps // 4096 + 1))
    step = y * beta_fixed
    step_int, step_frac = step >> PREC, step & MASK

    def run(k):
        s_lo = (nsteps * k) // nt
        s_hi = (nsteps * (k + 1)) // nt - 1
        if s_hi < s_lo:
            return (np.empty(0, np.int64), np.empty(0, np.int64),
                    np.empty(0, np.float64), np.empty(0, np.float64))
        ql = q_lo + y * s_lo
        qh = q_lo + y * s_hi
        i0, f0 = _advance(beta_fixed, ql)
        return impl.scan_crit(step_frac, step_int, f0, i0, ql, qh, y,
                              shf, sh_int, c_eff, mu, den_off)

    if nt == 1:
        parts = [run(0)]
    else:
        with ThreadPoolExecutor(max_workers=nt) as ex:
            parts = list(ex.map(run, range(nt)))
    return tuple(np.concatenate([p[k] for p in parts]) for k in range(4))


def scan_move_range(impl, beta_fixed, q_lo, q_hi, y,
                    psi_kind, psi_a, psi_b, psi_table,
                    gamma_kind, gamma_x, gamma_table,
                    eps_kind, eps_B, c0, threads=1):
    """Sharded scan_move; caller has already excluded degenerate small q."""
    nt = resolve_threads(threads)
    if q_hi < q_lo:
        return (np.empty(0, np.int64), np.empty(0, np.int64),
                np.empty(0, np.float64), np.empty(0, np.float64))
    nsteps = (q_hi - q_lo) // y + 1
    nt = max(1, min(nt, nsteps // 4096 + 1))
    step = y * beta_fixed
    step_int, step_frac = step >> PREC, step & MASK

    def run(k):
        s_lo = (nsteps * k) // nt
        s_hi = (nsteps * (k + 1)) // nt - 1
        if s_hi < s_lo:
            return (np.empty(0, np.int64), np.empty(0, np.int64),
                    np.empty(0, np.float64), np.empty(0, np.float64))
        ql = q_lo + y * s_lo
        qh = q_lo + y * s_hi
        i0, f0 = _advance(beta_fixed, ql)
        return impl.scan_move(step_frac, step_int, f0, i0, ql, qh, y,
                              psi_kind, psi_a, psi_b, psi_table,
                              gamma_kind, gamma_x, gamma_table,
                              eps_kind, eps_B, c0)

    if nt == 1:
        parts = [run(0)]
    else:
        with ThreadPoolExecutor(max_workers=nt) as ex:
            parts = list(ex.map(run, range(nt)))
    return tuple(np.concatenate([p[k] for p in parts]) for k in range(4))
