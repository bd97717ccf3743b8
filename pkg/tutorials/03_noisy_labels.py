"""
Noisy soft labels and sign labels
=================================

Annotators rarely report exact posteriors.  Here each soft label gets
mean-zero truncated Gaussian noise (sd 0.4).  Plugging the noisy values into
min(u, 1 - u) underestimates the Bayes error; knowing only which side of 0.5
each true posterior lies on is enough to remove the bias.
"""

from bayeserr import corrupt_set, estimate_noisy_naive, estimate_noisy_signed, estimate_soft, preset, sample_pn
from bayeserr.gaussian import isotropic
from bayeserr.experiments import run_series
from bayeserr.estimators import EstimatorKind

setup = preset("A")
draws = sample_pn(setup, 500, rng=3)
clean = draws.soft_labels()
noisy = corrupt_set(clean, 0.4, rng=4)

print("clean      :", round(estimate_soft(clean).point, 5))
print("naive noisy:", round(estimate_noisy_naive(noisy).point, 5))
print("sign-fixed :", round(estimate_noisy_signed(noisy).point, 5))

# %%
# The bias is largest when many posteriors sit near 0.5.  Averaging over
# trials on a hard two-dimensional problem makes it plain.

hard = isotropic(0.5, dim=2, name="near-boundary")
series = run_series(hard, 64, trials=200, mode="noisy", seed=5)
for kind in (EstimatorKind.SOFT, EstimatorKind.NOISY_NAIVE, EstimatorKind.NOISY_SIGNED):
    s = series[kind]
    print(f"{kind.value:13s} {s.mean:.4f} +- {s.stderr:.4f}")
