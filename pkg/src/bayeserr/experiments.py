"""Seeded Monte-Carlo experiments on Gaussian setups.

Trial ``t`` at grid point ``n`` draws from the child stream ``(seed, n, t)``
(plus a sub-stream index where a trial needs independent datasets), so a run
is identical whether trials execute serially or in parallel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .estimators import (
    DEFAULT_DELTA,
    EstimatorKind,
    estimate_noisy_naive,
    estimate_noisy_signed,
    estimate_pconf,
    estimate_soft,
    hoeffding_halfwidth,
)
from .gaussian import oracle_bayes_error, sample_pconf, sample_pn
from .noise import PAPER_SIGMA, NoiseSpec, corrupt_set
from .report import Report
from .rng import make_rng

# powers of two with the literal final value of the reference schedule
DEFAULT_GRID = (2, 4, 8, 16, 32, 64, 128, 256, 512, 1028)
MODES = ("pn", "noisy", "pconf")
PAPER_ORACLE_SAMPLES = 10_000
ORACLE_STREAM = (0,)


@dataclass
class TrialSeries:
    """Per-trial point estimates for one estimator at one grid point."""

    kind: EstimatorKind
    n_per_class: int
    n_labels: int
    points: list = field(default_factory=list)

    @property
    def mean(self):
        return math.fsum(self.points) / len(self.points)

    @property
    def stderr(self):
        k = len(self.points)
        if k < 2:
            return 0.0
        return float(np.std(self.points, ddof=1)) / math.sqrt(k)

    def coverage(self, target, delta=DEFAULT_DELTA):
        """Fraction of trials within the Hoeffding half-width of ``target``."""
        if self.kind is EstimatorKind.NOISY_NAIVE:
            return None
        half = hoeffding_halfwidth(self.n_labels, delta, self.kind)
        return float(np.mean(np.abs(np.asarray(self.points) - target) <= half))


def run_trial(setup, n_per_class, mode, seed, trial, sigma=PAPER_SIGMA):
    """One repetition; returns ``{kind: (point, n_labels)}``."""
    out = {}
    if mode == "pconf":
        draws = sample_pn(setup, n_per_class, make_rng(seed, n_per_class, trial, 0))
        est = estimate_soft(draws.soft_labels())
        out[est.kind] = (est.point, est.n)
        est = estimate_pconf(sample_pconf(setup, n_per_class, make_rng(seed, n_per_class, trial, 1)))
        out[est.kind] = (est.point, est.n)
        return out
    rng = make_rng(seed, n_per_class, trial)
    draws = sample_pn(setup, n_per_class, rng)
    soft = draws.soft_labels()
    est = estimate_soft(soft)
    out[est.kind] = (est.point, est.n)
    if mode == "noisy":
        noisy = corrupt_set(soft, NoiseSpec(sigma), rng)
        for fn in (estimate_noisy_naive, estimate_noisy_signed):
            est = fn(noisy)
            out[est.kind] = (est.point, est.n)
    elif mode != "pn":
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    return out


def run_series(setup, n_per_class, trials, mode="pn", seed=0, sigma=PAPER_SIGMA):
    """Run ``trials`` repetitions at one grid point."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    series = {}
    for t in range(trials):
        for kind, (point, n) in run_trial(setup, n_per_class, mode, seed, t, sigma).items():
            s = series.setdefault(kind, TrialSeries(kind, n_per_class, n))
            s.points.append(point)
    return series


def run_synth(setup, grid=DEFAULT_GRID, trials=10, mode="pn", seed=0, sigma=PAPER_SIGMA,
              delta=DEFAULT_DELTA, oracle_samples=PAPER_ORACLE_SAMPLES):
    """Sweep ``grid`` and return one :class:`Report` per (n, estimator)."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    oracle = oracle_bayes_error(setup, oracle_samples, make_rng(seed, *ORACLE_STREAM))
    reports = []
    for n in grid:
        for kind, s in run_series(setup, n, trials, mode, seed, sigma).items():
            meta = {
                "setup": setup.name,
                "mode": mode,
                "seed": seed,
                "trials": trials,
                "n_per_class": n,
                "stderr": s.stderr,
                "oracle": oracle,
                "oracle_samples": oracle_samples,
                "delta": delta,
            }
            if mode == "noisy":
                meta["sigma"] = sigma
            cov = s.coverage(oracle, delta)
            if cov is not None:
                meta["hoeffding_halfwidth"] = hoeffding_halfwidth(s.n_labels, delta, kind)
                meta["hoeffding_coverage"] = cov
            reports.append(Report(kind.value, s.n_labels, s.mean, (), meta, tuple(s.points)))
    return reports
