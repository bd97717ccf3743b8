import csv
import math
from fractions import Fraction

import numpy as np
import pytest

from bayeserr.errors import (
    DuplicateSampleError,
    EmptyDatasetError,
    MissingHardLabelError,
    MissingLabelError,
    ParseError,
    UncoveredClassError,
    UnknownPresetError,
    ZeroVotesError,
)
from bayeserr.estimators import estimate_pconf, estimate_soft
from bayeserr.ingest import (
    CIFAR10_CLASSES,
    ClassGrouping,
    GROUPING_PRESETS,
    PredictionRecord,
    VoteRecord,
    grouping_preset,
    load_grouping,
    load_hard_labels,
    load_predictions,
    load_votes,
    majority_labels,
    pconf_subset,
    resample_hard_labels,
    resampled_errors,
    score_predictions,
    soft_labels,
    votes_from_array,
)

ANIMALS = grouping_preset("animals-vs-artifacts")


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_presets_match_reference_splits():
    assert ANIMALS.positive == {"cat", "deer", "dog", "frog", "bird", "horse"}
    assert ANIMALS.negative == {"plane", "car", "ship", "truck"}
    assert grouping_preset("land-vs-other").positive == {"car", "truck", "cat", "deer", "dog", "horse"}
    assert grouping_preset("odd-vs-even").positive == {"plane", "bird", "deer", "frog", "ship"}
    assert grouping_preset("first5-vs-last5").positive == {"plane", "car", "bird", "cat", "deer"}
    with pytest.raises(UnknownPresetError):
        grouping_preset("cats-vs-dogs")


@pytest.mark.parametrize("name", GROUPING_PRESETS)
def test_grouping_completeness(name):
    g = grouping_preset(name)
    assert g.classes == set(CIFAR10_CLASSES)
    assert (len(g.positive), len(g.negative)) in {(6, 4), (5, 5)}


def test_grouping_rejects_overlap():
    with pytest.raises(ValueError):
        ClassGrouping({"a", "b"}, {"b", "c"})


def test_load_wide(tmp_path):
    p = write(tmp_path, "v.csv", "sample_id,cat,ship\nimg1,40,10\nimg2,0,3\n")
    recs = load_votes(p, "wide_csv")
    assert recs[0] == VoteRecord("img1", {"cat": 40, "ship": 10})
    assert [r.total for r in recs] == [50, 3]


def test_load_long(tmp_path):
    p = write(tmp_path, "v.csv", "sample_id,class,count\nimg1,cat,30\nimg1,ship,20\nimg2,dog,1\n")
    recs = load_votes(p, "long_csv")
    assert len(recs) == 2 and recs[0].total == 50


@pytest.mark.parametrize("text, fmt, exc", [
    ("sample_id,cat,ship\nimg1,0,0\n", "wide", ZeroVotesError),
    ("sample_id,cat,ship\nimg1,1,0\nimg1,2,0\n", "wide", DuplicateSampleError),
    ("sample_id,cat,ship\nimg1,1\n", "wide", ParseError),
    ("sample_id,cat,ship\nimg1,x,1\n", "wide", ParseError),
    ("sample_id,cat,ship\nimg1,-1,3\n", "wide", ParseError),
    ("id,class,count\n", "long", ParseError),
    ("sample_id,class,count\nimg1,cat,0\n", "long", ZeroVotesError),
])
def test_load_errors(tmp_path, text, fmt, exc):
    with pytest.raises(exc):
        load_votes(write(tmp_path, "v.csv", text), fmt)


def test_parse_error_carries_line(tmp_path):
    with pytest.raises(ParseError) as info:
        load_votes(write(tmp_path, "v.csv", "sample_id,cat\na,1\nb,1\nc,oops\n"), "wide")
    assert info.value.line == 4


def test_soft_labels():
    votes = [VoteRecord("a", {"cat": 40, "ship": 10}), VoteRecord("b", {"dog": 7})]
    assert soft_labels(votes, ANIMALS).values.tolist() == [0.8, 1.0]
    aliases = [VoteRecord("c", {"airplane": 1, "automobile": 1, "cat": 2})]
    assert soft_labels(aliases, ANIMALS).values.tolist() == [0.5]
    with pytest.raises(UncoveredClassError) as info:
        soft_labels([VoteRecord("x", {"unicorn": 1})], ANIMALS)
    assert info.value.name == "unicorn"


def test_custom_grouping_missing_class(tmp_path, votes_path):
    g = load_grouping(write(tmp_path, "g.yaml",
                            "positive: [cat, deer, dog, bird, horse]\nnegative: [plane, car, ship, truck]\n"))
    with pytest.raises(UncoveredClassError, match="frog"):
        soft_labels(load_votes(votes_path), g)


def test_proportions_are_exact(votes_path):
    votes = load_votes(votes_path)
    values = soft_labels(votes, ANIMALS).values
    for rec, v in zip(votes, values):
        pos = sum(k for name, k in rec.counts.items() if name in ANIMALS.positive)
        assert abs(v - pos / rec.total) <= 1e-15
        assert Fraction(v) == Fraction(pos, rec.total)  # dyadic totals


def _fraction_oracle(path, positive):
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    terms = []
    for row in rows:
        total = sum(int(v) for k, v in row.items() if k != "sample_id")
        pos = sum(int(row[k]) for k in positive)
        c = Fraction(pos, total)
        terms.append(min(c, 1 - c))
    return sum(terms) / len(terms)


@pytest.mark.parametrize("name", GROUPING_PRESETS)
def test_fixture_estimate_matches_rational_oracle(votes_path, name):
    g = grouping_preset(name)
    exact = _fraction_oracle(votes_path, g.positive)
    assert estimate_soft(soft_labels(load_votes(votes_path), g)).point == float(exact)


def test_votes_from_array():
    recs = votes_from_array(np.eye(10, dtype=int)[:3] * 5)
    assert recs[1].counts["car"] == 5 and recs[1].sample_id == "1"
    with pytest.raises(ZeroVotesError):
        votes_from_array(np.zeros((1, 10), dtype=int))


def test_pconf_subset():
    votes = [VoteRecord("a", {"cat": 9, "ship": 1}), VoteRecord("b", {"ship": 10})]
    data = pconf_subset(votes, ANIMALS, {"a": "cat", "b": "ship"})
    assert data.confidences.tolist() == [0.9] and data.class_prior == 0.5
    with pytest.raises(MissingHardLabelError):
        pconf_subset(votes, ANIMALS, {"a": "cat"})
    with pytest.raises(EmptyDatasetError):
        pconf_subset(votes, ANIMALS, {"a": "ship", "b": "car"})


def test_pconf_subset_on_fixture(votes_path, hard_labels_path):
    votes = load_votes(votes_path)
    hard = load_hard_labels(hard_labels_path)
    data = pconf_subset(votes, ANIMALS, hard)
    n_pos = sum(hard[r.sample_id] in ANIMALS.positive for r in votes)
    assert len(data) == n_pos and data.class_prior == n_pos / len(votes)
    assert 0.0 <= estimate_pconf(data).point <= data.class_prior


def test_resample_hard_labels():
    assert set(resample_hard_labels(np.ones(100), 0).tolist()) == {1}
    assert set(resample_hard_labels(np.zeros(100), 0).tolist()) == {-1}
    draws = resample_hard_labels(np.full(10**5, 0.5), 1)
    assert abs((draws == 1).mean() - 0.5) <= 0.005
    assert np.array_equal(resample_hard_labels(np.full(30, 0.3), 9), resample_hard_labels(np.full(30, 0.3), 9))


def test_majority_tie_goes_positive():
    assert majority_labels(np.array([0.5, 0.49, 0.51])).tolist() == [1, -1, 1]


def test_score_predictions():
    preds = [PredictionRecord("a", "cat"), PredictionRecord("b", "ship"), PredictionRecord("c", "dog")]
    labels = {"a": 1, "b": 1, "c": 1}
    assert score_predictions(preds, labels, ANIMALS) == pytest.approx(1 / 3)
    assert score_predictions(preds[::-1], labels, ANIMALS) == score_predictions(preds, labels, ANIMALS)
    assert score_predictions(preds[:1], {"a": 1}, ANIMALS) == 0.0
    with pytest.raises(MissingLabelError):
        score_predictions(preds, {"a": 1}, ANIMALS)
    with pytest.raises(EmptyDatasetError):
        score_predictions([], labels, ANIMALS)
    with pytest.raises(UncoveredClassError):
        score_predictions([PredictionRecord("a", "kangaroo")], labels, ANIMALS)


def test_footnote_single_sample_error():
    votes = [VoteRecord("x", {"cat": 8, "ship": 2})]
    errs = resampled_errors([PredictionRecord("x", "cat")], votes, ANIMALS, 10_000, 3)
    assert abs(errs.mean() - 0.2) <= 0.012


def test_resampled_error_floor(votes_path):
    # any fixed prediction vector: E[resampled error] >= soft-label Bayes error
    votes = load_votes(votes_path)[:100]
    soft = soft_labels(votes, ANIMALS)
    beta = estimate_soft(soft).point
    rng = np.random.default_rng(0)
    for trial in range(3):
        names = rng.choice(CIFAR10_CLASSES, size=len(votes))
        preds = [PredictionRecord(r.sample_id, str(n)) for r, n in zip(votes, names)]
        errs = resampled_errors(preds, votes, ANIMALS, 200, trial)
        assert errs.mean() >= beta - 3 * errs.std(ddof=1) / math.sqrt(errs.size)
    best = [PredictionRecord(r.sample_id, "cat" if c >= 0.5 else "ship") for r, c in zip(votes, soft.values)]
    errs = resampled_errors(best, votes, ANIMALS, 200, 7)
    assert errs.mean() >= beta - 3 * errs.std(ddof=1) / math.sqrt(errs.size)


def test_prediction_and_hard_label_files(tmp_path):
    preds = load_predictions(write(tmp_path, "p.csv", "sample_id,predicted_class\na,cat\nb,truck\n"))
    assert preds == [PredictionRecord("a", "cat"), PredictionRecord("b", "truck")]
    hard = load_hard_labels(write(tmp_path, "h.csv", "sample_id,class\na,cat\n"))
    assert hard == {"a": "cat"}
    with pytest.raises(ParseError):
        load_predictions(write(tmp_path, "bad.csv", "id,pred\na,cat\n"))
