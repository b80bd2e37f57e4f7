import math
from fractions import Fraction

import numpy as np
import pytest

from smalldiv.divisors import (IterLogWeight, N0, batch_eta_chain,
                               batch_gcd_identity, dsum_ratio, eta,
                               gcd_sum_identity_check, h_weight, series,
                               sieve, unweighted_dsum, weight,
                               weight_condition_check)


def _d_brute(n):
    return sum(1 for e in range(1, n + 1) if n % e == 0)


def _phi_brute(n):
    return sum(1 for m in range(1, n + 1) if math.gcd(n, m) == 1)


def test_sieves_match_brute_force():
    t = sieve(200)
    for n in range(1, 201):
        assert t.d[n] == _d_brute(n)
        assert t.phi[n] == _phi_brute(n)


def test_gcd_identity_examples():
    lhs, rhs, equal = gcd_sum_identity_check(6)
    assert equal
    assert lhs == Fraction(5, 2)
    for n in (1, 2, 12, 360, 997):
        assert gcd_sum_identity_check(n)[2]


def test_batch_identity_small():
    assert batch_gcd_identity(300)


def test_eta_example():
    rep = eta(3, 2, 1)
    assert rep.eta_value == Fraction(9, 7)
    assert rep.divisor_phi_bound == Fraction(13, 7)
    assert rep.d_bound == 2
    assert rep.chain_ok


def test_eta_equality_at_divisor_rich_n():
    # q=6, y=1, z=0: n=6 and the first bound is attained
    rep = eta(6, 1, 0)
    assert rep.eta_value == rep.divisor_phi_bound == Fraction(5, 2)


def test_batch_eta_chain():
    assert batch_eta_chain(150, 2, 1)
    assert batch_eta_chain(150, 3, 2)


def test_weight_k2_is_power():
    w = IterLogWeight(2, 0.5)
    assert w.x_min == 1.0
    assert w(4.0) == 4.0**1.5
    assert w(0.5) == 1.0  # clamped at x_min


def test_weight_k3_values():
    w = IterLogWeight(3, 1.0)
    assert w.x_min == math.e
    assert w(math.e) == pytest.approx(math.e)
    x = 100.0
    assert w(x) == pytest.approx(x * math.log(x) ** 2)


def test_weight_validation():
    with pytest.raises(ValueError):
        IterLogWeight(1, 1.0)
    with pytest.raises(ValueError):
        IterLogWeight(3, 0.0)


def test_h_weight_composition():
    w = IterLogWeight(3, 1.0)
    assert h_weight(math.exp(10.0), w) == pytest.approx(w(10.0))
    with pytest.raises(ValueError):
        h_weight(0.0, w)


def test_weight_condition_ratio():
    w = IterLogWeight(2, 1.0)
    rep = weight_condition_check(w, L=120)
    # h(2q)/h(q) = (log 2q / log q)^2 <= 4 for q >= 2
    assert rep.ratio_bound <= 4.0
    # sum 1/(l log 2)^2 converges: the last decade is a tiny share
    assert rep.cauchy_ok
    short = weight_condition_check(w, L=20)
    assert not short.cauchy_ok  # too few terms to see the convergence


def test_unweighted_dsum_exact():
    t = sieve(10)
    total = sum(Fraction(1, int(t.d[n])) for n in range(1, 11))
    assert unweighted_dsum(10) == total
    assert unweighted_dsum(10, 2, 1) == Fraction(17, 6)


def test_dsum_ratio_band_small():
    # sanity: the normalized sum is order one already at 10^5
    assert 0.3 < dsum_ratio(10**5) < 0.8


def test_series_matches_direct_loop():
    from smalldiv.approx import ApproxFunction
    w = IterLogWeight(3, 1.0)
    psi = ApproxFunction.power(1.0, 1.0)
    x = 500
    t = sieve(x)
    s = series([x], w, psi=psi, y=2, z=1, table=t)
    G = H = pG = pH = 0.0
    for n in range(N0, x + 1):
        if n % 2 != 1:
            continue
        dn = int(t.d[n])
        g = 1.0 / (w(math.log(dn)) * dn)
        hn = 1.0 / (w(max(math.log(2.0) * math.log(math.log(n)), w.x_min))
                    * math.sqrt(math.log(n)))
        G += g
        H += hn
        pG += (1.0 / n) * g
        pH += (1.0 / n) * hn
    assert s.G[0] == pytest.approx(G, rel=1e-12)
    assert s.H[0] == pytest.approx(H, rel=1e-12)
    assert s.psiG[0] == pytest.approx(pG, rel=1e-12)
    assert s.psiH[0] == pytest.approx(pH, rel=1e-12)
    assert s.ratio_G[0] == s.G[0] / s.reference[0]
