"""
From crowd votes to a Bayes error
=================================

Multiclass vote counts (one row per image, one column per class) become soft
labels once the classes are split into a positive and a negative group.  The
bundled fixture mimics CIFAR-10H-style annotations for 200 images.
"""

from bayeserr import data, estimate
from bayeserr.ingest import (
    GROUPING_PRESETS,
    PredictionRecord,
    grouping_preset,
    load_hard_labels,
    load_votes,
    majority_labels,
    pconf_subset,
    resampled_errors,
    score_predictions,
    soft_labels,
)

votes = load_votes(data.path(data.SYNTHETIC_VOTES))
hard = load_hard_labels(data.path(data.SYNTHETIC_HARD_LABELS))

for name in GROUPING_PRESETS:
    g = grouping_preset(name)
    pn = estimate(soft_labels(votes, g), "soft", methods=["normal"])
    pc = estimate(pconf_subset(votes, g, hard), "pconf", methods=["normal"])
    lo, hi = pn.interval("normal").lower, pn.interval("normal").upper
    print(f"{name:22s} PN {pn.point:.2%} ({lo:.2%}, {hi:.2%})   Pconf {pc.point:.2%}")

# %%
# A classifier that predicts every image's generating class is perfect on
# the hard labels, yet when test labels are redrawn from the annotators'
# vote shares its error cannot drop below the Bayes error.

g = grouping_preset("animals-vs-artifacts")
soft = soft_labels(votes, g)
preds = [PredictionRecord(r.sample_id, hard[r.sample_id]) for r in votes]
ids = [r.sample_id for r in votes]
print("\nerror vs majority vote :", score_predictions(preds, dict(zip(ids, majority_labels(soft).tolist())), g))
errs = resampled_errors(preds, votes, g, resamples=20, seed=0)
print(f"error vs resampled     : {errs.mean():.4f} +- {errs.std(ddof=1) / len(errs) ** 0.5:.4f}")
print(f"soft-label Bayes error : {estimate(soft, 'soft').point:.4f}")
