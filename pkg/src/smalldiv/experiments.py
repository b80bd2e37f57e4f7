"""Sampled-beta experiment drivers with reproducible seeding.

Beta samples are drawn from the documented splitmix64 generator (two
64-bit words per beta, high word first), so identical (seed, config)
always produce identical summaries.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field

from .betaspec import BetaValue, random_beta, resolve_beta
from .fixedpoint import SplitMix64
from .rubin import make_params, scan_small_divisors
from .scans import CriticalForm, critical_hits


@dataclass(frozen=True)
class ExperimentConfig:
    samples: int
    seed: int
    c_list: tuple
    q_max: int = 0  # critical experiments
    j_max: int = 0  # F-scan experiments
    form: int = 48
    mu: float = 1.0
    residue: tuple = (1, 0)
    n: int = 3
    rho: float = 2.5
    beta_override: str | None = None
    threads: int = 1

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not self.c_list:
            raise ValueError("c_list must be nonempty")


@dataclass
class SampleResult:
    index: int
    beta: BetaValue
    counts: dict = field(default_factory=dict)  # c -> hit count
    first_hit: dict = field(default_factory=dict)  # c -> smallest q (or None)


@dataclass
class ExperimentSummary:
    config: ExperimentConfig
    results: list  # SampleResult, ordered by index
    fraction_with_hit: dict  # c -> fraction of samples with >= 1 hit
    mean_count: dict
    median_count: dict

    def counts_for(self, c) -> list:
        return [r.counts[c] for r in self.results]


def _sample_betas(cfg: ExperimentConfig) -> list[BetaValue]:
    if cfg.beta_override is not None:
        b = resolve_beta(cfg.beta_override, seed=cfg.seed)
        return [b] * cfg.samples
    rng = SplitMix64(cfg.seed)
    return [random_beta(rng) for _ in range(cfg.samples)]


def _summarize(cfg, results) -> ExperimentSummary:
    frac, mean, med = {}, {}, {}
    for c in cfg.c_list:
        counts = [r.counts[c] for r in results]
        frac[c] = sum(1 for v in counts if v > 0) / len(counts)
        mean[c] = statistics.fmean(counts)
        med[c] = statistics.median(counts)
    return ExperimentSummary(
        config=cfg, results=results, fraction_with_hit=frac,
        mean_count=mean, median_count=med,
    )


def run_critical_experiment(cfg: ExperimentConfig, impl=None) -> ExperimentSummary:
    """Hit statistics for one of the endpoint forms over sampled beta."""
    if cfg.q_max < 1:
        raise ValueError("q_max must be set")
    results = []
    for i, b in enumerate(_sample_betas(cfg)):
        res = SampleResult(index=i, beta=b)
        for c in cfg.c_list:
            hits = critical_hits(
                b, CriticalForm(cfg.form, cfg.mu, c), cfg.q_max,
                residue=cfg.residue, threads=cfg.threads, impl=impl,
            )
            res.counts[c] = len(hits)
            res.first_hit[c] = hits[0].q if hits else None
        results.append(res)
    return _summarize(cfg, results)


def run_f_experiment(cfg: ExperimentConfig, impl=None) -> ExperimentSummary:
    """Small-divisor hit statistics for the two-sine model."""
    if cfg.j_max < 1:
        raise ValueError("j_max must be set")
    results = []
    for i, b in enumerate(_sample_betas(cfg)):
        p = make_params(cfg.n, cfg.rho, b)
        res = SampleResult(index=i, beta=b)
        for c in cfg.c_list:
            hits = scan_small_divisors(p, c, cfg.j_max,
                                       threads=cfg.threads, impl=impl)
            res.counts[c] = len(hits)
            res.first_hit[c] = hits[0].j if hits else None
        results.append(res)
    return _summarize(cfg, results)
