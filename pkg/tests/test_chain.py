import math
from fractions import Fraction

import pytest

from smalldiv.chain import (construct_exact_solution, find_threshold,
                            run_witness, verify_chain)
from smalldiv.rubin import f_value, make_params


def test_witness_identity_exactly_zero():
    bv, w = construct_exact_solution(3, 2.0, 50, 31)
    rep = run_witness(3, 2.0, 50, 31, 0.01)
    assert rep.step("key-identity").lhs == 0.0
    assert rep.step("sd_1''").lhs == 0.0


def test_reference_witness_final_bound():
    rep = run_witness(3, 2.0, 50, 31, 0.01)
    assert rep.final_pass
    final = rep.step("final")
    assert final.rhs == pytest.approx(8.0 * math.pi * 0.01)
    # the final quantity really is the two-sine model value
    bv, w = construct_exact_solution(3, 2.0, 50, 31)
    p = make_params(3, 2.0, bv)
    assert final.lhs == abs(f_value(p, 50))


def test_beta_is_dyadic_and_in_range():
    bv, w = construct_exact_solution(4, 3.0, 200, 57)
    assert 0 < bv.fraction < 1
    assert bv.fraction.denominator & (bv.fraction.denominator - 1) == 0
    assert bv.fraction != Fraction(1, 2)


def test_witness_consistency_enforced():
    bv, w = construct_exact_solution(3, 2.0, 50, 31)
    p = make_params(3, 2.5, bv)  # wrong rho for this witness
    with pytest.raises(ValueError):
        verify_chain(p, 0.01, w)


def test_all_steps_pass_above_threshold():
    thr, reports = find_threshold(3, 2.0, 0.1, (10, 30, 100, 300, 1000))
    assert thr is not None
    for rep in reports:
        if rep.j >= thr:
            assert rep.all_steps_pass
            assert rep.final_pass


def test_step_constants():
    rep = run_witness(3, 2.0, 300, 170, 0.1)
    j = 300
    c = 0.1
    assert rep.step("sd_1''").rhs == pytest.approx(4 * c / j**2)
    assert rep.step("sd_2").rhs == pytest.approx(10 * c / j)
    assert rep.step("12c-step").rhs == pytest.approx(12 * c / j)
    assert rep.step("sd_3").rhs == pytest.approx(6 * c / j)
    assert rep.step("sd_5").rhs == pytest.approx(7 * math.pi * c / j)


def test_degenerate_requests_rejected():
    with pytest.raises(ValueError):
        construct_exact_solution(2, 2.0, 50, 200)  # k out of range
    with pytest.raises(ValueError):
        run_witness(3, 2.0, 50, 31, -1.0)
