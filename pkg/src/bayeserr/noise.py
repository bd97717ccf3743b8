"""Mean-preserving label noise and sign labels.

A soft label ``c`` is corrupted by Gaussian noise with standard deviation
``sigma`` centred on ``c`` and truncated symmetrically to
``[c - a, c + a]`` with ``a = min(c, 1 - c)``.  The symmetric truncation
keeps ``E[u | c] = c`` and ``0 <= u <= 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri

from .errors import InvalidLabelError
from .estimators import LabelKind, SignedNoisySet, SoftLabelSet
from .rng import make_rng

PAPER_SIGMA = 0.4

# below this half-width/sigma ratio rejection accepts < 4% of proposals
_INVERSE_CDF_RATIO = 0.05


@dataclass(frozen=True)
class NoiseSpec:
    sigma: float = PAPER_SIGMA

    def __post_init__(self):
        if not (float(self.sigma) > 0.0):
            raise ValueError(f"sigma must be positive, got {self.sigma!r}")
        object.__setattr__(self, "sigma", float(self.sigma))


def _check_labels(c):
    c = np.asarray(c, dtype=float)
    bad = ~((c >= 0.0) & (c <= 1.0))
    if bad.any():
        i = int(np.flatnonzero(bad.reshape(-1))[0])
        raise InvalidLabelError(i, float(c.reshape(-1)[i]))
    return c


def _truncated_offsets(half, sigma, rng):
    """Draw ``z ~ N(0, sigma)`` conditioned on ``|z| <= half``, elementwise."""
    z = np.zeros_like(half)
    live = half > 0.0
    inv = live & (half < _INVERSE_CDF_RATIO * sigma)
    rej = live & ~inv

    idx = np.flatnonzero(rej)
    while idx.size:
        prop = rng.normal(0.0, sigma, idx.size)
        ok = np.abs(prop) <= half[idx]
        z[idx[ok]] = prop[ok]
        idx = idx[~ok]

    idx = np.flatnonzero(inv)
    if idx.size:
        lo = ndtr(-half[idx] / sigma)
        p = lo + rng.random(idx.size) * (1.0 - 2.0 * lo)
        z[idx] = sigma * ndtri(p)
    # ndtri may overshoot by an ulp at the tails
    return np.clip(z, -half, half)


def perturb(c, spec=NoiseSpec(), rng=None):
    """Corrupt soft label(s) ``c`` with mean-preserving truncated Gaussian noise.

    Accepts a scalar or an array; labels at exactly 0 or 1 come back unchanged.
    """
    spec = spec if isinstance(spec, NoiseSpec) else NoiseSpec(spec)
    c = _check_labels(c)
    rng = make_rng(rng)
    flat = np.atleast_1d(c).astype(float).reshape(-1)
    half = np.minimum(flat, 1.0 - flat)
    u = np.clip(flat + _truncated_offsets(half, spec.sigma, rng), 0.0, 1.0)
    return float(u[0]) if c.ndim == 0 else u.reshape(c.shape)


def sign_label(c):
    """+1 when ``c >= 0.5`` (ties go positive), otherwise -1."""
    c = _check_labels(c)
    s = np.where(c >= 0.5, 1, -1).astype(np.int8)
    return int(s) if c.ndim == 0 else s


def corrupt_set(labels, spec=NoiseSpec(), rng=None):
    """Noisy labels plus sign labels derived from the clean posteriors."""
    if not isinstance(labels, SoftLabelSet):
        labels = SoftLabelSet(labels)
    if labels.kind is not LabelKind.SOFT:
        raise ValueError("corrupt_set needs soft labels, not uncertainty labels")
    c = labels.values
    return SignedNoisySet(perturb(c, spec, rng), sign_label(c))
