import pytest

from smalldiv.experiments import (ExperimentConfig, run_critical_experiment,
                                  run_f_experiment)


def test_golden_override_fibonacci_count():
    cfg = ExperimentConfig(samples=1, seed=0, c_list=(0.5,), q_max=100,
                           form=410, mu=1.0, beta_override="golden")
    s = run_critical_experiment(cfg)
    assert s.counts_for(0.5) == [10]
    assert s.fraction_with_hit[0.5] == 1.0


def test_counts_monotone_across_c():
    cfg = ExperimentConfig(samples=20, seed=3, c_list=(0.5, 1.0),
                           q_max=20000, form=48)
    s = run_critical_experiment(cfg)
    for lo, hi in zip(s.counts_for(0.5), s.counts_for(1.0)):
        assert lo <= hi
    assert s.mean_count[0.5] <= s.mean_count[1.0]


def test_deterministic_given_seed():
    cfg = ExperimentConfig(samples=8, seed=11, c_list=(0.7,), q_max=5000)
    a = run_critical_experiment(cfg)
    b = run_critical_experiment(cfg)
    assert [r.beta.fixed for r in a.results] == [r.beta.fixed for r in b.results]
    assert a.counts_for(0.7) == b.counts_for(0.7)
    other = ExperimentConfig(samples=8, seed=12, c_list=(0.7,), q_max=5000)
    c = run_critical_experiment(other)
    assert a.counts_for(0.7) != c.counts_for(0.7)


def test_f_experiment_all_hits_for_huge_c():
    j_max = 30
    cfg = ExperimentConfig(samples=4, seed=1, c_list=(float(j_max + 10),),
                           j_max=j_max, n=3, rho=2.5)
    s = run_f_experiment(cfg)
    assert all(v == j_max for v in s.counts_for(float(j_max + 10)))


def test_first_hit_recorded():
    cfg = ExperimentConfig(samples=5, seed=2, c_list=(1.0,), j_max=2000,
                           n=3, rho=2.5)
    s = run_f_experiment(cfg)
    for r in s.results:
        if r.counts[1.0]:
            assert 1 <= r.first_hit[1.0] <= 2000
        else:
            assert r.first_hit[1.0] is None


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(samples=0, seed=1, c_list=(0.5,))
    with pytest.raises(ValueError):
        ExperimentConfig(samples=1, seed=1, c_list=())
    with pytest.raises(ValueError):
        run_critical_experiment(ExperimentConfig(samples=1, seed=1,
                                                 c_list=(0.5,)))
