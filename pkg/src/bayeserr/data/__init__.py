"""Bundled fixtures."""

from importlib import resources


def path(name):
    """Filesystem path of a bundled data file."""
    return resources.files(__name__) / name


SYNTHETIC_VOTES = "synthetic_votes_200.csv"
SYNTHETIC_HARD_LABELS = "synthetic_hard_labels_200.csv"
