import math
from fractions import Fraction

import pytest

from smalldiv.betaspec import random_beta, resolve_beta
from smalldiv.fixedpoint import SplitMix64
from smalldiv.rubin import (f_value, frac_distance, make_params,
                            model_multiplier, scan_small_divisors,
                            scan_small_divisors_unpruned)


def _f_oracle(p, j):
    """Direct evaluation with the sine argument reduced mod 2 exactly."""
    beta = p.beta.fraction

    def term(r):
        # reduce mod 2 into [-1, 1): sin(pi .) has period 2
        red = (j * beta - r) % 2
        if red >= 1:
            red -= 2
        return math.sin(math.pi * float(red))

    return j * term(p.r0) + p.rho2 * term(p.r1)


def test_f_value_matches_direct_reduction():
    rng = SplitMix64(3)
    for _ in range(5):
        p = make_params(3, 2.5, random_beta(rng))
        for j in (1, 2, 17, 1000, 99991):
            assert f_value(p, j) == pytest.approx(_f_oracle(p, j), abs=1e-9)


def test_frac_distance_exact():
    p = make_params(3, 2.0, resolve_beta("1/3"))
    for j in (1, 2, 3, 10):
        d = Fraction(j) * p.beta.fraction - p.r0
        d = d % 1
        expect = float(min(d, 1 - d))
        assert frac_distance(p, j) == pytest.approx(expect, abs=1e-18)


def test_critical_flag():
    assert make_params(2, 1.0, resolve_beta("1/3")).critical
    assert make_params(2, 0.0, resolve_beta("1/3")).critical
    assert not make_params(2, 2.0, resolve_beta("1/3")).critical
    # for critical rho the second term vanishes identically
    p = make_params(2, 1.0, resolve_beta("golden"))
    assert p.rho2 == 0.0


def test_make_params_validation():
    with pytest.raises(ValueError):
        make_params(1, 2.0, resolve_beta("1/3"))
    with pytest.raises(ValueError):
        make_params(3, 2.0, resolve_beta("1/2"))


def test_scan_matches_unpruned_oracle():
    rng = SplitMix64(12)
    for _ in range(3):
        p = make_params(3, 2.5, random_beta(rng))
        fast = scan_small_divisors(p, 0.8, 3000)
        slow = scan_small_divisors_unpruned(p, 0.8, 3000)
        assert [(h.j, h.f_value, h.frac_distance) for h in fast] == \
               [(h.j, h.f_value, h.frac_distance) for h in slow]


def test_known_small_case():
    # n=3, rho=2, beta=1/3: j=2 is a small divisor at c=0.3
    p = make_params(3, 2.0, resolve_beta("1/3"))
    hits = scan_small_divisors(p, 0.3, 10)
    assert 2 in [h.j for h in hits]


def test_huge_c_hits_everything():
    p = make_params(3, 2.5, resolve_beta("golden"))
    j_max = 50
    c = j_max + abs(p.rho2) + 1.0
    assert len(scan_small_divisors(p, c, j_max)) == j_max


def test_model_multiplier_scaling():
    p = make_params(3, 2.5, resolve_beta("golden"))
    j = 1000
    assert model_multiplier(p, j) == f_value(p, j) / j ** 3.5
