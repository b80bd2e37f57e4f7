"""Bit-identity between the compiled kernels and the pure fallback."""

import numpy as np
import pytest

from smalldiv import kernels
from smalldiv.approx import ApproxFunction, TargetFamily, lemma_key_family
from smalldiv.betaspec import random_beta
from smalldiv.fixedpoint import SplitMix64
from smalldiv.rubin import make_params

pure = kernels.get_impl("pure")
try:
    fast = kernels.get_impl("fast")
except ImportError:
    fast = None

needs_fast = pytest.mark.skipif(fast is None, reason="compiled kernels missing")


def _eq(a, b):
    assert len(a) == len(b)
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x, y)


@needs_fast
def test_scan_f_bit_identical():
    rng = SplitMix64(21)
    for _ in range(3):
        p = make_params(3, 2.5, random_beta(rng))
        args = (p.beta.fixed, 1, 50000, p.r0_par, p.r0_fixed,
                p.r1_par, p.r1_fixed, p.rho2, 0.9)
        _eq(kernels.scan_f_range(pure, *args),
            kernels.scan_f_range(fast, *args))


@needs_fast
def test_scan_f_threading_invariant():
    rng = SplitMix64(22)
    p = make_params(2, -1.0, random_beta(rng))
    args = (p.beta.fixed, 1, 80000, p.r0_par, p.r0_fixed,
            p.r1_par, p.r1_fixed, p.rho2, 1.2)
    _eq(kernels.scan_f_range(fast, *args, threads=1),
        kernels.scan_f_range(fast, *args, threads=7))


@needs_fast
def test_scan_crit_bit_identical():
    rng = SplitMix64(23)
    from smalldiv.fixedpoint import HALF
    for y, z in ((1, 1), (2, 1)):
        b = random_beta(rng)
        args = (b.fixed, z, 60000, y, HALF, 0, 0.8, 1.0, 0)
        _eq(kernels.scan_crit_range(pure, *args),
            kernels.scan_crit_range(fast, *args))


@needs_fast
def test_scan_move_bit_identical():
    rng = SplitMix64(24)
    b = random_beta(rng)
    psi, fam = lemma_key_family(0.3, 0.2, 0.4)
    pk, pa, pb, ptab = psi.kernel_args(30000)
    gk, gx, gtab, ek, eb, c0 = fam.kernel_args(30000)
    args = (b.fixed, 11, 30000, 1, pk, pa, pb, ptab, gk, gx, gtab, ek, eb, c0)
    _eq(kernels.scan_move_range(pure, *args),
        kernels.scan_move_range(fast, *args))


@needs_fast
def test_sieves_bit_identical():
    _eq((pure.sieve_d(30000),), (fast.sieve_d(30000),))
    _eq((pure.sieve_phi(30000),), (fast.sieve_phi(30000),))


@needs_fast
def test_arc_inter_matches_pure():
    rng = np.random.default_rng(5)
    # random disjoint sorted segments on two denominators
    def segs(total, n):
        cuts = np.unique(rng.integers(0, total, size=4 * n))[: 2 * n]
        return [(int(cuts[2 * i]), int(cuts[2 * i + 1])) for i in range(n)]

    q, r = 17, 12
    M = 1 << 40
    sa = segs(q * M, 25)
    sb = segs(r * M, 19)

    def limbs(s):
        u = (1 << 64) - 1
        return (np.array([x[0] >> 64 for x in s], dtype=np.uint64),
                np.array([x[0] & u for x in s], dtype=np.uint64),
                np.array([x[1] >> 64 for x in s], dtype=np.uint64),
                np.array([x[1] & u for x in s], dtype=np.uint64))

    la, lb = limbs(sa), limbs(sb)
    got_p = pure.arc_inter(*la, r, *lb, q)
    got_f = fast.arc_inter(*la, r, *lb, q)
    assert got_p == got_f
    # direct O(n m) reference in exact integers
    ref = 0
    for alo, ahi in sa:
        for blo, bhi in sb:
            lo = max(alo * r, blo * q)
            hi = min(ahi * r, bhi * q)
            if hi > lo:
                ref += hi - lo
    assert got_p == ref


def test_force_pure_env(monkeypatch):
    assert kernels.get_impl("pure").IMPL == "pure"
    with pytest.raises(ValueError):
        kernels.get_impl("weird")


def test_resolve_threads():
    assert kernels.resolve_threads(3) == 3
    assert kernels.resolve_threads(0) >= 1
    with pytest.raises(ValueError):
        kernels.resolve_threads(-1)
