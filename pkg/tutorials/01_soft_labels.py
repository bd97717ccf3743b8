"""
Bayes error from soft and uncertainty labels
============================================

When each sample comes with its class posterior c = p(y=+1|x), the Bayes
error is simply the mean of min(c, 1 - c).  No classifier and no instances
are needed.
"""

import numpy as np

from bayeserr import SoftLabelSet, estimate, estimate_prior, estimate_uncertainty

# A handful of soft labels, e.g. collected from annotators
c = SoftLabelSet([0.05, 0.2, 0.9, 0.97, 0.5, 0.65, 0.01, 0.88])

est = estimate(c, "soft", delta=0.05, methods=["hoeffding", "normal"])
print(f"soft-label estimate: {est.point:.4f} from n={est.n}")
for iv in est.intervals:
    print(f"  {iv.method.value:9s} 95% interval: ({iv.lower:.4f}, {iv.upper:.4f})")

# %%
# The Hoeffding interval is distribution-free and wide at small n; the
# normal-approximation interval is tighter but only asymptotically valid.
#
# Uncertainty labels hide which class dominates.  They still give the same
# estimate, but the class prior can no longer be recovered.

u = c.to_uncertainty()
print("uncertainty-label estimate:", estimate_uncertainty(u).point)
print("prior from soft labels:", estimate_prior(c))

# %%
# With many labels the interval narrows at the 1/sqrt(n) rate.

rng = np.random.default_rng(0)
big = SoftLabelSet(rng.beta(0.3, 0.3, size=10_000))
est = estimate(big, "soft", methods=["hoeffding", "normal"])
print(f"n=10000: {est.point:.4f}, hoeffding +-{est.interval('hoeffding').width / 2:.4f}, "
      f"normal +-{est.interval('normal').width / 2:.4f}")
