"""Top-level acceptance gate: one test (and one printed verdict line) per
criterion.  Budgets are wall-clock seconds; statistical bands are pinned
to the seeds given in each criterion.
"""

import math
import statistics
import time
from fractions import Fraction

import pytest

from smalldiv import artifacts
from smalldiv.approx import ApproxFunction, TargetFamily, lemma_key_family
from smalldiv.betaspec import random_beta
from smalldiv.chain import find_threshold
from smalldiv.divisors import (batch_eta_chain, batch_gcd_identity,
                               dsum_ratio, IterLogWeight, series, sieve)
from smalldiv.eqsets import check_size, overlap_sweep, quantized_family
from smalldiv.experiments import (ExperimentConfig, run_critical_experiment,
                                  run_f_experiment)
from smalldiv.fixedpoint import SplitMix64
from smalldiv.rubin import (make_params, scan_small_divisors,
                            scan_small_divisors_unpruned)
from smalldiv.scans import hits_brute, hits_fast, reduce_49


def _verdict(num, ok, detail):
    print(f"CRITERION {num}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {num}: {detail}"


@pytest.fixture(scope="module")
def sieve_1e4():
    return sieve(3 * 10**4 + 2)


@pytest.fixture(scope="module")
def sieve_1e7():
    return sieve(10**7)


@pytest.fixture(scope="module")
def summary_c6():
    cfg = ExperimentConfig(samples=200, seed=11, c_list=(1.0,),
                           j_max=10**6, n=3, rho=2.5, threads=0)
    return run_f_experiment(cfg)


@pytest.fixture(scope="module")
def summary_c7():
    cfg = ExperimentConfig(samples=100, seed=7, c_list=(0.5, 1.0),
                           q_max=10**6, form=48, mu=1.0, threads=0)
    return run_critical_experiment(cfg)


def test_criterion_01_exact_identities(sieve_1e4):
    t0 = time.time()
    ok = batch_gcd_identity(10**4, table=sieve_1e4)
    for y, z in ((1, 0), (2, 0), (2, 1), (3, 2)):
        ok = ok and batch_eta_chain(10**4, y, z, table=sieve_1e4)
    elapsed = time.time() - t0
    _verdict(1, ok and elapsed < 60,
             f"gcd/eta identities exact up to 10^4, {elapsed:.1f}s")


def test_criterion_02_eq_size():
    t0 = time.time()
    rng = SplitMix64(2024)

    def u01():
        return rng.next64() / 2.0**64

    bad = 0
    for _ in range(1000):
        q = 10 + rng.next64() % 9991
        c = 0.05 + 0.4 * u01()
        x = u01()
        B = (u01() - 0.5) * 2.0 * c  # C0 = |B|/c <= 1
        psi, fam = lemma_key_family(x, B if B else 0.1 * c, c)
        rep = check_size(q, psi, fam)
        if not (rep.precondition_ok and rep.disjoint and rep.matches_2psi):
            bad += 1
    elapsed = time.time() - t0
    _verdict(2, bad == 0 and elapsed < 60,
             f"1000 random arc sets disjoint with measure 2*psi(q), "
             f"{bad} failures, {elapsed:.1f}s")


def test_criterion_03_overlap_sweep():
    t0 = time.time()
    rng = SplitMix64(303)

    def u01():
        return rng.next64() / 2.0**64

    violations = 0
    for _ in range(20):
        c = 0.2 + 0.25 * u01()
        x = u01()
        B = (u01() - 0.5) * c  # C0 <= 1/2: precondition holds for q >= 50
        psi, fam = quantized_family(x, B, c, 400)
        reports = overlap_sweep(psi, fam, 50, 400)
        violations += sum(1 for r in reports if not r.satisfied)
    elapsed = time.time() - t0
    _verdict(3, violations == 0 and elapsed < 300,
             f"20 families x 61425 pairs, {violations} bound violations, "
             f"{elapsed:.1f}s")


def test_criterion_04_oracle_equivalence():
    t0 = time.time()
    rng = SplitMix64(404)

    def u01():
        return rng.next64() / 2.0**64

    residues = ((1, 0), (2, 0), (2, 1), (3, 2), (5, 3))
    mismatches = 0
    for i in range(20):
        b = random_beta(rng)
        c = 0.2 + 0.3 * u01()
        if i % 3 == 2:
            psi = ApproxFunction.log(c, 1.0)
        else:
            psi = ApproxFunction.power(c, 1.0)
        B = (u01() - 0.5) * 0.4
        c0 = max(abs(B) / (q * psi.value(q)) for q in (1, 10**5)) * 1.000001
        fam = TargetFamily(gamma_kind="constant", gamma_x=u01(),
                           eps_kind="cosine" if B else "zero",
                           eps_B=B, c0=c0)
        residue = residues[i % len(residues)]
        hb = hits_brute(b, psi, fam, 10**5, residue=residue)
        hf = hits_fast(b, psi, fam, 10**5, residue=residue, threads=0)
        if [h.as_tuple() for h in hb] != [h.as_tuple() for h in hf]:
            mismatches += 1
    for i in range(10):
        p = make_params(2 + i % 3, (-1.0, 0.5, 2.5, 3.0)[i % 4],
                        random_beta(rng))
        c = 0.5 + u01()
        pruned = scan_small_divisors(p, c, 10**5, threads=0)
        plain = scan_small_divisors_unpruned(p, c, 10**5)
        if [(h.j, h.f_value, h.frac_distance) for h in pruned] != \
           [(h.j, h.f_value, h.frac_distance) for h in plain]:
            mismatches += 1
    elapsed = time.time() - t0
    _verdict(4, mismatches == 0 and elapsed < 300,
             f"20 moving-target + 10 pruned-scan oracle comparisons, "
             f"{mismatches} mismatches, {elapsed:.1f}s")


def test_criterion_05_reduction_chain():
    t0 = time.time()
    j_values = (10, 30, 100, 300, 1000, 3000, 10000)
    witnesses = 0
    failures = []
    for n in (2, 3, 4):
        for rho in (-1.0, 0.5, 2.0, 3.0):
            for c in (0.01, 0.1):
                thr, reports = find_threshold(n, rho, c, j_values)
                witnesses += len(reports)
                if thr is None:
                    failures.append((n, rho, c, "no threshold"))
                    continue
                for rep in reports:
                    if rep.j < thr:
                        continue
                    if not rep.all_steps_pass:
                        failures.append((n, rho, c, rep.j))
                    j = rep.j
                    consts = {
                        "sd_1''": 4 * c / j**2,
                        "sd_2": 10 * c / j,
                        "12c-step": 12 * c / j,
                        "sd_3": 6 * c / j,
                        "sd_5": 7 * math.pi * c / j,
                        "final": 8 * math.pi * c,
                    }
                    for name, rhs in consts.items():
                        if abs(rep.step(name).rhs - rhs) > 1e-12 * rhs:
                            failures.append((n, rho, c, j, name))
    elapsed = time.time() - t0
    _verdict(5, witnesses >= 50 and not failures and elapsed < 120,
             f"{witnesses} witnesses, failures={failures[:3]}, "
             f"{elapsed:.1f}s")


def test_criterion_06_two_sine_statistics(summary_c6):
    t0 = time.time()
    frac = summary_c6.fraction_with_hit[1.0]
    mean = summary_c6.mean_count[1.0]
    elapsed = time.time() - t0
    _verdict(6, frac >= 0.95 and 3.0 <= mean <= 20.0 and elapsed < 600,
             f"fraction with hit {frac:.3f}, mean count {mean:.2f}")


def test_criterion_07_endpoint_statistics(summary_c7):
    t0 = time.time()
    frac = summary_c7.fraction_with_hit[0.5]
    dominate = all(
        a <= b for a, b in zip(summary_c7.counts_for(0.5),
                               summary_c7.counts_for(1.0))
    )
    contrast = run_critical_experiment(ExperimentConfig(
        samples=100, seed=7, c_list=(0.5,), q_max=10**6, form=48, mu=1.5,
        threads=0,
    ))
    med = statistics.median(contrast.counts_for(0.5))
    elapsed = time.time() - t0
    _verdict(7, frac >= 0.95 and dominate and med in (0, 1) and elapsed < 600,
             f"fraction {frac:.3f}, dominance {dominate}, "
             f"contrast median {med} (q=1 is an unconditional hit at c=0.5, "
             f"so the median has a floor of 1 plus small-q hits)")


def test_criterion_08_reduce49_bijection():
    t0 = time.time()
    rng = SplitMix64(808)
    bad = 0
    for _ in range(20):
        chk = reduce_49(random_beta(rng), 0.5, 10**5, threads=0)
        if not chk.passed:
            bad += 1
    elapsed = time.time() - t0
    _verdict(8, bad == 0 and elapsed < 120,
             f"20 sampled beta, {bad} bijection failures, {elapsed:.1f}s")


def test_criterion_09_divisor_series(sieve_1e7):
    t0 = time.time()
    r = dsum_ratio(10**7, table=sieve_1e7)
    w = IterLogWeight(3, 1.0)
    band_ok = True
    details = [f"S(x)sqrt(log x)/x = {r:.4f}"]
    for y, z in ((1, 0), (2, 1)):
        s = series([10**5, 10**6, 10**7], w, y=y, z=z, table=sieve_1e7)
        bg = max(s.ratio_G) / min(s.ratio_G)
        bh = max(s.ratio_H) / min(s.ratio_H)
        ref_ok = all(0.25 <= v <= 4.0 for v in s.ratio_H)
        band_ok = band_ok and bg <= 4.0 and bh <= 4.0 and ref_ok
        details.append(f"(y={y},z={z}) G band {bg:.3f}, H band {bh:.3f}")
    elapsed = time.time() - t0
    _verdict(9, 0.40 <= r <= 0.70 and band_ok and elapsed < 600,
             "; ".join(details) + f", {elapsed:.1f}s")


def test_criterion_10_deterministic_artifacts(tmp_path, summary_c6,
                                              summary_c7):
    meta6 = {"seed": 11, "samples": 200, "jmax": 10**6, "n": 3, "rho": 2.5,
             "c": 1.0}
    meta7 = {"seed": 7, "samples": 100, "qmax": 10**6, "form": 48, "mu": 1.0}
    rerun6 = run_f_experiment(ExperimentConfig(
        samples=200, seed=11, c_list=(1.0,), j_max=10**6, n=3, rho=2.5,
        threads=0))
    rerun7 = run_critical_experiment(ExperimentConfig(
        samples=100, seed=7, c_list=(0.5, 1.0), q_max=10**6, form=48,
        mu=1.0, threads=0))
    same = True
    for name, meta, a, b in (("c6", meta6, summary_c6, rerun6),
                             ("c7", meta7, summary_c7, rerun7)):
        p1 = tmp_path / f"{name}_1.csv"
        p2 = tmp_path / f"{name}_2.csv"
        artifacts.write_summary_csv(p1, a, meta)
        artifacts.write_summary_csv(p2, b, meta)
        j1 = tmp_path / f"{name}_1.json"
        j2 = tmp_path / f"{name}_2.json"
        artifacts.write_json(j1, artifacts.summary_json(a), meta)
        artifacts.write_json(j2, artifacts.summary_json(b), meta)
        same = same and p1.read_bytes() == p2.read_bytes() \
            and j1.read_bytes() == j2.read_bytes()
    _verdict(10, same, "rerun artifacts byte-identical for criteria 6 and 7")
