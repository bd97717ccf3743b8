"""Instance-free Bayes error estimators and their confidence intervals.

Every estimator is the mean of bounded per-sample terms:

==============  ===================================  ===========
kind            per-sample term                      term range
==============  ===================================  ===========
Soft            ``min(c, 1 - c)``                    [0, 0.5]
Uncertainty     ``c'``                               [0, 0.5]
NoisyNaive      ``min(u, 1 - u)``                    [0, 0.5]
NoisySigned     ``1 - u`` if ``s = +1`` else ``u``    [0, 1]
Pconf           ``prior * (1 - max(0, 2 - 1/r))``    [0, prior]
==============  ===================================  ===========

Sums are accumulated with :func:`math.fsum`, which is exactly rounded and
therefore independent of input order.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import ndtri

from .errors import (
    EmptyDatasetError,
    InvalidDeltaError,
    InvalidLabelError,
    InvalidPriorError,
    InvalidSignError,
    LengthMismatchError,
    TooFewSamplesError,
    UnsupportedKindError,
)

DEFAULT_DELTA = 0.05


class LabelKind(str, enum.Enum):
    SOFT = "soft"
    UNCERTAINTY = "uncertainty"


class EstimatorKind(str, enum.Enum):
    SOFT = "soft"
    UNCERTAINTY = "uncertainty"
    NOISY_NAIVE = "noisy_naive"
    NOISY_SIGNED = "noisy_signed"
    PCONF = "pconf"


class IntervalMethod(str, enum.Enum):
    HOEFFDING = "hoeffding"
    NORMAL = "normal"


def _as_values(values, low, high):
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    bad = ~((arr >= low) & (arr <= high))  # also catches NaN
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise InvalidLabelError(i, float(arr[i]), low, high)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SoftLabelSet:
    """Per-sample positive-class posteriors, or uncertainty labels.

    ``values`` is validated eagerly: soft labels must lie in [0, 1] and
    uncertainty labels in [0, 0.5].
    """

    values: np.ndarray
    kind: LabelKind = LabelKind.SOFT

    def __post_init__(self):
        kind = LabelKind(self.kind)
        high = 1.0 if kind is LabelKind.SOFT else 0.5
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "values", _as_values(self.values, 0.0, high))

    def __len__(self):
        return self.values.size

    @classmethod
    def uncertainty(cls, values):
        return cls(values, LabelKind.UNCERTAINTY)

    def to_uncertainty(self):
        """Hide the dominant class, keeping only ``min(c, 1 - c)``."""
        if self.kind is LabelKind.UNCERTAINTY:
            return self
        return SoftLabelSet(np.minimum(self.values, 1.0 - self.values), LabelKind.UNCERTAINTY)


@dataclass(frozen=True)
class SignedNoisySet:
    """Noisy soft labels paired with sign labels in {+1, -1}."""

    noisy_values: np.ndarray
    signs: np.ndarray

    def __post_init__(self):
        u = _as_values(self.noisy_values, 0.0, 1.0)
        s = np.asarray(self.signs).reshape(-1)
        if s.size != u.size:
            raise LengthMismatchError(u.size, s.size)
        bad = (s != 1) & (s != -1)
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            raise InvalidSignError(i, s[i].item())
        s = s.astype(np.int8)
        s.setflags(write=False)
        object.__setattr__(self, "noisy_values", u)
        object.__setattr__(self, "signs", s)

    def __len__(self):
        return self.noisy_values.size


@dataclass(frozen=True)
class PconfSet:
    """Positive-confidence values for positive-class samples plus the class prior."""

    confidences: np.ndarray
    class_prior: float

    def __post_init__(self):
        prior = float(self.class_prior)
        if not (0.0 < prior <= 1.0):
            raise InvalidPriorError(self.class_prior)
        object.__setattr__(self, "class_prior", prior)
        object.__setattr__(
            self, "confidences", _as_values(self.confidences, 0.0, 1.0)
        )

    def __len__(self):
        return self.confidences.size


@dataclass(frozen=True)
class Interval:
    method: IntervalMethod
    delta: float
    lower: float
    upper: float

    @property
    def width(self):
        return self.upper - self.lower


@dataclass(frozen=True)
class BayesEstimate:
    """A point estimate of the Bayes error with optional confidence intervals."""

    point: float
    n: int
    kind: EstimatorKind
    intervals: tuple[Interval, ...] = ()
    class_prior: float | None = None

    @property
    def valid_range(self):
        """Range the estimate (and any interval) is confined to."""
        return valid_range(self.kind, self.class_prior)

    def interval(self, method):
        method = IntervalMethod(method)
        for iv in self.intervals:
            if iv.method is method:
                return iv
        raise KeyError(method.value)


def valid_range(kind, class_prior=None):
    kind = EstimatorKind(kind)
    if kind is EstimatorKind.NOISY_SIGNED:
        return 0.0, 1.0
    if kind is EstimatorKind.PCONF:
        return 0.0, 1.0 if class_prior is None else float(class_prior)
    return 0.0, 0.5


def _mean(terms):
    if len(terms) == 0:
        raise EmptyDatasetError()
    return math.fsum(terms) / len(terms)


# --- per-sample terms -------------------------------------------------------

def soft_terms(labels):
    if not isinstance(labels, SoftLabelSet):
        labels = SoftLabelSet(labels)
    if labels.kind is LabelKind.UNCERTAINTY:
        return labels.values
    c = labels.values
    return np.minimum(c, 1.0 - c)


def noisy_signed_terms(data):
    u = data.noisy_values
    return np.where(data.signs == 1, 1.0 - u, u)


def pconf_terms(data):
    """``prior * (1 - max(0, 2 - 1/r))``.

    ``2 - 1/r`` is positive only for ``r > 0.5``, so smaller confidences
    (including ``r = 0``) contribute ``prior`` without any division.
    """
    r = data.confidences
    high = r > 0.5
    inv = np.divide(1.0, r, out=np.full_like(r, 2.0), where=high)
    return data.class_prior * (1.0 - (2.0 - inv))


# --- point estimators -------------------------------------------------------

def estimate_soft(labels):
    """Mean of ``min(c, 1 - c)`` over clean soft labels.

    Args:
        labels: a :class:`SoftLabelSet` of kind soft, or anything array-like
            holding values in [0, 1].

    Returns:
        BayesEstimate of kind ``soft``.
    """
    if not isinstance(labels, SoftLabelSet):
        labels = SoftLabelSet(labels)
    if labels.kind is not LabelKind.SOFT:
        raise UnsupportedKindError(labels.kind.value, "estimate_soft expects soft labels")
    terms = soft_terms(labels)
    return BayesEstimate(_mean(terms), terms.size, EstimatorKind.SOFT)


def estimate_uncertainty(labels):
    """Mean of uncertainty labels ``c' = min(c, 1 - c)``."""
    if not isinstance(labels, SoftLabelSet):
        labels = SoftLabelSet.uncertainty(labels)
    if labels.kind is not LabelKind.UNCERTAINTY:
        raise UnsupportedKindError(labels.kind.value, "estimate_uncertainty expects uncertainty labels")
    return BayesEstimate(_mean(labels.values), len(labels), EstimatorKind.UNCERTAINTY)


def estimate_noisy_naive(data):
    """Plug noisy labels straight into ``min(u, 1 - u)``; signs are ignored.

    This estimator is biased downward whenever the noise straddles 0.5.  It is
    kept for comparison and carries no confidence interval.
    """
    if not isinstance(data, SignedNoisySet):
        u = _as_values(data, 0.0, 1.0)
    else:
        u = data.noisy_values
    terms = np.minimum(u, 1.0 - u)
    return BayesEstimate(_mean(terms), terms.size, EstimatorKind.NOISY_NAIVE)


def estimate_noisy_signed(data):
    """Sign-corrected estimator for noisy soft labels.

    Samples with sign +1 contribute ``1 - u`` and samples with sign -1
    contribute ``u``, which keeps the noise outside of any nonlinearity.
    """
    terms = noisy_signed_terms(data)
    return BayesEstimate(_mean(terms), terms.size, EstimatorKind.NOISY_SIGNED)


def estimate_pconf(data):
    """Bayes error from positive-class confidences and the class prior."""
    terms = pconf_terms(data)
    point = min(max(_mean(terms), 0.0), data.class_prior)
    return BayesEstimate(point, terms.size, EstimatorKind.PCONF, class_prior=data.class_prior)


def estimate_prior(labels):
    """Estimate the positive class prior as the mean soft label."""
    if not isinstance(labels, SoftLabelSet):
        labels = SoftLabelSet(labels)
    if labels.kind is not LabelKind.SOFT:
        raise UnsupportedKindError(
            labels.kind.value, "the class prior cannot be recovered from uncertainty labels"
        )
    return _mean(labels.values)


def estimator_terms(data, kind):
    """Per-sample terms whose mean is the estimate of ``kind``."""
    kind = EstimatorKind(kind)
    if kind in (EstimatorKind.SOFT, EstimatorKind.UNCERTAINTY):
        return soft_terms(data)
    if kind is EstimatorKind.NOISY_NAIVE:
        u = data.noisy_values
        return np.minimum(u, 1.0 - u)
    if kind is EstimatorKind.NOISY_SIGNED:
        return noisy_signed_terms(data)
    return pconf_terms(data)


# --- intervals --------------------------------------------------------------

def _check_delta(delta):
    delta = float(delta)
    if not (0.0 < delta < 1.0):
        raise InvalidDeltaError(delta)
    return delta


def hoeffding_halfwidth(n, delta=DEFAULT_DELTA, kind=EstimatorKind.SOFT):
    """Distribution-free half-width holding with probability ``1 - delta``.

    Terms bounded in an interval of width ``w`` give
    ``sqrt(w**2 * log(2/delta) / (2n))``: ``w = 1/2`` for soft and
    uncertainty labels, ``w = 1`` for the sign-corrected and Pconf estimators.
    """
    delta = _check_delta(delta)
    kind = EstimatorKind(kind)
    if n < 1:
        raise EmptyDatasetError()
    if kind in (EstimatorKind.SOFT, EstimatorKind.UNCERTAINTY):
        return math.sqrt(math.log(2.0 / delta) / (8.0 * n))
    if kind in (EstimatorKind.NOISY_SIGNED, EstimatorKind.PCONF):
        return math.sqrt(math.log(2.0 / delta) / (2.0 * n))
    raise UnsupportedKindError(kind.value, "the naive noisy estimator is biased; no bound is offered")


def _clamp(lo, hi, bounds):
    if bounds is None:
        return lo, hi
    a, b = bounds
    return min(max(lo, a), b), min(max(hi, a), b)


def normal_interval(values, delta=DEFAULT_DELTA, bounds=None):
    """Normal-approximation interval ``mean +- z * sd / sqrt(n)``.

    ``sd`` is the sample standard deviation (``n - 1`` denominator).  When
    ``bounds`` is given the endpoints are clamped into it.
    """
    delta = _check_delta(delta)
    x = np.asarray(values, dtype=float).reshape(-1)
    n = x.size
    if n < 2:
        raise TooFewSamplesError(n)
    mean = math.fsum(x) / n
    var = math.fsum((x - mean) ** 2) / (n - 1)
    half = float(ndtri(1.0 - delta / 2.0)) * math.sqrt(var / n)
    return _clamp(mean - half, mean + half, bounds)


def attach_intervals(estimate, terms, delta=DEFAULT_DELTA, methods=(IntervalMethod.HOEFFDING,)):
    """Return ``estimate`` with the requested intervals appended."""
    methods = [IntervalMethod(m) for m in methods]
    if not methods:
        return estimate
    delta = _check_delta(delta)
    bounds = estimate.valid_range
    added = []
    for method in methods:
        if method is IntervalMethod.HOEFFDING:
            half = hoeffding_halfwidth(estimate.n, delta, estimate.kind)
            lo, hi = _clamp(estimate.point - half, estimate.point + half, bounds)
        else:
            if estimate.kind is EstimatorKind.NOISY_NAIVE:
                raise UnsupportedKindError(
                    estimate.kind.value, "the naive noisy estimator is biased; no interval is offered"
                )
            lo, hi = normal_interval(terms, delta, bounds)
        added.append(Interval(method, delta, lo, hi))
    return replace(estimate, intervals=estimate.intervals + tuple(added))


_ESTIMATORS = {
    EstimatorKind.SOFT: estimate_soft,
    EstimatorKind.UNCERTAINTY: estimate_uncertainty,
    EstimatorKind.NOISY_NAIVE: estimate_noisy_naive,
    EstimatorKind.NOISY_SIGNED: estimate_noisy_signed,
    EstimatorKind.PCONF: estimate_pconf,
}


def estimate(data, kind, delta=DEFAULT_DELTA, methods=()):
    """Run the estimator for ``kind`` and attach ``methods`` intervals in one go."""
    kind = EstimatorKind(kind)
    est = _ESTIMATORS[kind](data)
    if methods:
        est = attach_intervals(est, estimator_terms(data, kind), delta, methods)
    return est
