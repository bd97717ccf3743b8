"""
Positive-confidence data
========================

Only positive-class samples are labelled, each with its confidence
r = p(y=+1|x).  Together with the class prior this still identifies the
Bayes error.  Confidences below 0.5 only matter through their count.
"""

from bayeserr import PconfSet, estimate, preset, sample_pconf
from bayeserr.estimators import EstimatorKind
from bayeserr.experiments import run_series

setup = preset("A")
data = sample_pconf(setup, 2000, rng=7)
est = estimate(data, "pconf", methods=["hoeffding", "normal"])
print(f"Pconf estimate {est.point:.4f}, normal CI ({est.interval('normal').lower:.4f}, "
      f"{est.interval('normal').upper:.4f})")

# values under 0.5 can be coarsened without changing anything
coarse = PconfSet([r if r > 0.5 else 0.0 for r in data.confidences], data.class_prior)
print(f"after discarding r < 0.5: {estimate(coarse, 'pconf').point:.4f}")

# %%
# PN versus Pconf as the sample size grows.

print(f"\n{'n':>6} {'PN':>8} {'Pconf':>8}")
for n in (4, 16, 64, 256, 1024):
    s = run_series(setup, n, trials=10, mode="pconf", seed=2)
    print(f"{n:>6} {s[EstimatorKind.SOFT].mean:8.5f} {s[EstimatorKind.PCONF].mean:8.5f}")
