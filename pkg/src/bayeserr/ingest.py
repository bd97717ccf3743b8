"""Crowd vote counts to soft labels, Pconf subsets, and prediction scoring.

Multiclass annotations are reduced to a binary problem with a
:class:`ClassGrouping`.  The soft label of a sample is the share of its votes
that fall on positive-group classes.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import yaml

from .errors import (
    DuplicateSampleError,
    EmptyDatasetError,
    MissingHardLabelError,
    MissingLabelError,
    ParseError,
    UncoveredClassError,
    UnknownPresetError,
    ZeroVotesError,
)
from .estimators import LabelKind, PconfSet, SoftLabelSet
from .noise import sign_label
from .rng import make_rng

# CIFAR-10 class order (index 0..9)
CIFAR10_CLASSES = ("plane", "car", "bird", "cat", "deer", "dog", "frog", "horse", "ship", "truck")
CLASS_ALIASES = {"airplane": "plane", "automobile": "car"}

_PRESET_POSITIVES = {
    "animals-vs-artifacts": ("cat", "deer", "dog", "frog", "bird", "horse"),
    "land-vs-other": ("car", "truck", "cat", "deer", "dog", "horse"),
    "odd-vs-even": ("plane", "bird", "deer", "frog", "ship"),
    "first5-vs-last5": ("plane", "car", "bird", "cat", "deer"),
}
GROUPING_PRESETS = tuple(_PRESET_POSITIVES)


@dataclass(frozen=True)
class VoteRecord:
    sample_id: str
    counts: dict

    @property
    def total(self):
        return sum(self.counts.values())


@dataclass(frozen=True)
class PredictionRecord:
    sample_id: str
    predicted_class: str


@dataclass(frozen=True)
class ClassGrouping:
    positive: frozenset
    negative: frozenset
    name: str = "custom"

    def __post_init__(self):
        pos, neg = frozenset(self.positive), frozenset(self.negative)
        both = pos & neg
        if both:
            raise ValueError(f"classes in both groups: {sorted(both)}")
        if not pos or not neg:
            raise ValueError("both groups need at least one class")
        object.__setattr__(self, "positive", pos)
        object.__setattr__(self, "negative", neg)

    @property
    def classes(self):
        return self.positive | self.negative

    def resolve(self, name):
        """Canonical class name, accepting ``airplane``/``automobile`` spellings."""
        if name in self.positive or name in self.negative:
            return name
        alias = CLASS_ALIASES.get(name.lower(), name.lower())
        if alias in self.positive or alias in self.negative:
            return alias
        raise UncoveredClassError(name)

    def sign(self, name):
        return 1 if self.resolve(name) in self.positive else -1


def grouping_preset(name):
    """One of the four CIFAR-10 binary splits, e.g. ``animals-vs-artifacts``."""
    if name not in _PRESET_POSITIVES:
        raise UnknownPresetError(name, GROUPING_PRESETS)
    pos = frozenset(_PRESET_POSITIVES[name])
    return ClassGrouping(pos, frozenset(CIFAR10_CLASSES) - pos, name=name)


def load_grouping(path):
    """Read a ``positive: [...]`` / ``negative: [...]`` mapping (YAML or JSON)."""
    path = Path(path)
    doc = yaml.safe_load(path.read_text())
    if not isinstance(doc, dict) or "positive" not in doc or "negative" not in doc:
        raise ParseError(1, "grouping file needs 'positive' and 'negative' lists", path)
    return ClassGrouping(frozenset(map(str, doc["positive"])),
                         frozenset(map(str, doc["negative"])), name=path.stem)


def resolve_grouping(spec):
    if isinstance(spec, ClassGrouping):
        return spec
    if spec in _PRESET_POSITIVES:
        return grouping_preset(spec)
    if Path(spec).exists():
        return load_grouping(spec)
    raise UnknownPresetError(spec, GROUPING_PRESETS)


# --- CSV readers ------------------------------------------------------------

def _rows(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for row in reader:
            if not row or all(not cell.strip() for cell in row):
                continue
            yield reader.line_num, [cell.strip() for cell in row]


def _header(rows, path, expected=None):
    try:
        line, header = next(rows)
    except StopIteration:
        raise ParseError(1, "file is empty", path) from None
    if expected is not None and header != list(expected):
        raise ParseError(line, f"expected header {','.join(expected)}, got {','.join(header)}", path)
    return header


def _count(cell, line, path):
    try:
        value = int(cell)
    except ValueError:
        raise ParseError(line, f"vote count {cell!r} is not an integer", path) from None
    if value < 0:
        raise ParseError(line, f"vote count {value} is negative", path)
    return value


def load_votes(path, format="wide_csv"):
    """Load vote counts.

    ``wide_csv``: header ``sample_id,<class1>,...,<classK>``, one row per sample.
    ``long_csv``: header ``sample_id,class,count``; rows are summed per sample.

    Raises:
        ParseError: malformed row (carries the line number).
        DuplicateSampleError: a sample id repeats in wide format.
        ZeroVotesError: a sample has no votes at all.
    """
    fmt = format.replace("-", "_")
    if fmt in ("wide", "long"):
        fmt += "_csv"
    rows = _rows(path)
    records = {}
    if fmt == "wide_csv":
        header = _header(rows, path)
        if len(header) < 2 or header[0] != "sample_id":
            raise ParseError(1, "wide header must be sample_id,<class1>,...", path)
        classes = header[1:]
        for line, row in rows:
            if len(row) != len(header):
                raise ParseError(line, f"expected {len(header)} fields, got {len(row)}", path)
            sid = row[0]
            if sid in records:
                raise DuplicateSampleError(sid)
            records[sid] = {k: _count(v, line, path) for k, v in zip(classes, row[1:])}
    elif fmt == "long_csv":
        _header(rows, path, ("sample_id", "class", "count"))
        for line, row in rows:
            if len(row) != 3:
                raise ParseError(line, f"expected 3 fields, got {len(row)}", path)
            sid, name, cell = row
            counts = records.setdefault(sid, {})
            counts[name] = counts.get(name, 0) + _count(cell, line, path)
    else:
        raise ValueError(f"unknown vote format {format!r}")
    out = []
    for sid, counts in records.items():
        rec = VoteRecord(sid, counts)
        if rec.total < 1:
            raise ZeroVotesError(sid)
        out.append(rec)
    return out


def votes_from_array(counts, class_names=CIFAR10_CLASSES, ids=None):
    """Wrap an ``(n, K)`` count matrix (e.g. ``cifar10h-counts.npy``) as records."""
    counts = np.asarray(counts)
    if ids is None:
        ids = [str(i) for i in range(counts.shape[0])]
    out = []
    for sid, row in zip(ids, counts):
        rec = VoteRecord(str(sid), {k: int(v) for k, v in zip(class_names, row)})
        if rec.total < 1:
            raise ZeroVotesError(rec.sample_id)
        out.append(rec)
    return out


def write_votes_wide(path, votes, class_names):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["sample_id", *class_names])
        for rec in votes:
            w.writerow([rec.sample_id, *(rec.counts.get(k, 0) for k in class_names)])


def _two_column(path, columns):
    rows = _rows(path)
    _header(rows, path, columns)
    out = []
    for line, row in rows:
        if len(row) != 2:
            raise ParseError(line, f"expected 2 fields, got {len(row)}", path)
        out.append((line, row[0], row[1]))
    return out


def load_predictions(path):
    """Prediction CSV with header ``sample_id,predicted_class``."""
    return [PredictionRecord(sid, name)
            for _, sid, name in _two_column(path, ("sample_id", "predicted_class"))]


def load_hard_labels(path):
    """Hard-label CSV with header ``sample_id,class``."""
    out = {}
    for _, sid, name in _two_column(path, ("sample_id", "class")):
        if sid in out:
            raise DuplicateSampleError(sid)
        out[sid] = name
    return out


# --- transformations --------------------------------------------------------

def positive_share(record, grouping):
    pos = 0
    for name, k in record.counts.items():
        if grouping.resolve(name) in grouping.positive:
            pos += k
    return pos / record.total


def soft_labels(votes, grouping):
    """Soft label per record: positive-group votes over total votes, in input order."""
    return SoftLabelSet(np.array([positive_share(r, grouping) for r in votes], dtype=float),
                        LabelKind.SOFT)


def pconf_subset(votes, grouping, hard_labels):
    """Positive-confidence data from samples whose hard label is positive.

    The class prior is the fraction of all samples with a positive hard label.
    """
    if not votes:
        raise EmptyDatasetError("vote records")
    conf = []
    n_pos = 0
    for rec in votes:
        if rec.sample_id not in hard_labels:
            raise MissingHardLabelError(rec.sample_id)
        share = positive_share(rec, grouping)
        if grouping.sign(hard_labels[rec.sample_id]) == 1:
            n_pos += 1
            conf.append(share)
    if n_pos == 0:
        raise EmptyDatasetError("positive-labelled samples")
    return PconfSet(np.array(conf), n_pos / len(votes))


def majority_labels(soft):
    """Hard labels from soft labels by the sign rule (``c = 0.5`` maps to +1)."""
    return sign_label(soft.values if isinstance(soft, SoftLabelSet) else soft)


def resample_hard_labels(soft, rng=None):
    """One Bernoulli(c_i) draw per sample, as +1/-1."""
    c = soft.values if isinstance(soft, SoftLabelSet) else np.asarray(soft, dtype=float)
    rng = make_rng(rng)
    return np.where(rng.random(c.size) < c, 1, -1).astype(np.int8)


def score_predictions(preds, labels, grouping):
    """Fraction of predictions whose grouped sign disagrees with the label.

    ``labels`` maps sample id to +1/-1; alignment is by id, never by position.
    """
    if not preds:
        raise EmptyDatasetError("predictions")
    wrong = 0
    for p in preds:
        try:
            y = labels[p.sample_id]
        except KeyError:
            raise MissingLabelError(p.sample_id) from None
        wrong += grouping.sign(p.predicted_class) != int(y)
    return wrong / len(preds)


def resampled_errors(preds, votes, grouping, resamples=20, seed=None):
    """Prediction error against ``resamples`` independent label redraws.

    Draw ``k`` uses the child stream ``(seed, k)``.
    """
    if not preds:
        raise EmptyDatasetError("predictions")
    ids = [r.sample_id for r in votes]
    known = set(ids)
    for p in preds:
        if p.sample_id not in known:
            raise MissingLabelError(p.sample_id)
    soft = soft_labels(votes, grouping)
    errors = np.empty(resamples)
    for k in range(resamples):
        labels = dict(zip(ids, resample_hard_labels(soft, make_rng(seed, k)).tolist()))
        errors[k] = score_predictions(preds, labels, grouping)
    return errors


def write_label_file(path, ids, values, column):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["sample_id", column])
        for sid, v in zip(ids, values):
            w.writerow([sid, repr(float(v))])
