"""Timing comparison of the compiled kernels against the pure fallback.

Run:  python3 benchmarks/bench_kernels.py [--quick]

Both implementations are exercised on identical inputs and the outputs
are compared for bit identity while timing, so a speedup reported here
is a speedup on verified-equal work.
"""

import argparse
import time

import numpy as np

from smalldiv import kernels
from smalldiv.approx import lemma_key_family
from smalldiv.betaspec import resolve_beta
from smalldiv.fixedpoint import HALF
from smalldiv.rubin import make_params


def timeit(fn, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def check_equal(a, b):
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x, y)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    n = 10**6 if args.quick else 10**7

    pure = kernels.get_impl("pure")
    try:
        fast = kernels.get_impl("fast")
    except ImportError:
        raise SystemExit("compiled kernels are not built; run pip install -e .")

    b = resolve_beta("golden")
    p = make_params(3, 2.5, b)
    psi, fam = lemma_key_family(0.3, 0.2, 0.4)
    pk, pa, pb, ptab = psi.kernel_args(n)
    gk, gx, gtab, ek, eb, c0 = fam.kernel_args(n)

    cases = {
        "scan_f": lambda impl: kernels.scan_f_range(
            impl, b.fixed, 1, n, p.r0_par, p.r0_fixed, p.r1_par, p.r1_fixed,
            p.rho2, 0.5),
        "scan_crit": lambda impl: kernels.scan_crit_range(
            impl, b.fixed, 1, n, 1, HALF, 0, 0.5, 1.0, 0),
        "scan_move": lambda impl: kernels.scan_move_range(
            impl, b.fixed, 30, n, 1, pk, pa, pb, ptab,
            gk, gx, gtab, ek, eb, c0),
        "sieve_d": lambda impl: (impl.sieve_d(n),),
    }

    print(f"range size {n:.0e}")
    print(f"{'kernel':<12}{'pure (s)':>10}{'fast (s)':>10}{'speedup':>9}")
    for name, fn in cases.items():
        tp, rp = timeit(lambda: fn(pure), repeat=1)
        tf, rf = timeit(lambda: fn(fast))
        check_equal(rp, rf)
        print(f"{name:<12}{tp:>10.3f}{tf:>10.3f}{tp / tf:>8.1f}x")
    print("outputs bit-identical across implementations")


if __name__ == "__main__":
    main()
