"""
Synthetic Gaussian benchmark
============================

Setups A (10-d) and B (20-d) place unit-covariance Gaussians at 0 and 1.
Their exact posteriors act as soft labels, and a Monte-Carlo oracle gives
the true Bayes error, which also has a closed form here.
"""

from bayeserr import analytic_bayes_error_isotropic, oracle_bayes_error, preset
from bayeserr.experiments import run_series

for name in ("A", "B"):
    setup = preset(name)
    oracle = oracle_bayes_error(setup, 200_000, 0)
    print(f"setup {name}: oracle {oracle:.5f}, closed form {analytic_bayes_error_isotropic(setup):.5f}")

# %%
# How quickly does the soft-label estimator approach the truth?  Ten trials
# per sample size, as mean +- standard error (the data behind a convergence plot).

setup = preset("A")
truth = analytic_bayes_error_isotropic(setup)
print(f"\n{'n/class':>8} {'mean':>8} {'stderr':>8}   truth {truth:.5f}")
for n in (2, 8, 32, 128, 512):
    s = run_series(setup, n, trials=10, mode="pn", seed=1)
    soft = next(iter(s.values()))
    print(f"{n:>8} {soft.mean:8.5f} {soft.stderr:8.5f}")
