"""Regenerate the bundled 200-sample vote fixture.

Each sample gets 32 or 64 annotator votes over the ten CIFAR-10 classes,
so every positive-vote share is a dyadic rational and exactly representable.
The hard label is the sample's generating class.

    python tools/make_synthetic_votes.py src/bayeserr/data
"""

import csv
import sys
from pathlib import Path

import numpy as np

CLASSES = ("plane", "car", "bird", "cat", "deer", "dog", "frog", "horse", "ship", "truck")


def main(outdir):
    outdir = Path(outdir)
    rng = np.random.default_rng(20220101)
    rows, hard = [], []
    for i in range(200):
        true = int(rng.integers(10))
        total = int(rng.choice([32, 64]))
        p = rng.dirichlet(np.full(10, 0.3)) * (1 - 0.85)
        p[true] += 0.85
        counts = rng.multinomial(total, p)
        sid = f"s{i:03d}"
        rows.append([sid, *counts.tolist()])
        hard.append([sid, CLASSES[true]])
    with open(outdir / "synthetic_votes_200.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["sample_id", *CLASSES])
        w.writerows(rows)
    with open(outdir / "synthetic_hard_labels_200.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["sample_id", "class"])
        w.writerows(hard)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/bayeserr/data")
