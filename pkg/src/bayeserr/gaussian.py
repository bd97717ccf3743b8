"""Two-class Gaussian benchmarks with exact class posteriors.

A :class:`GaussianSetup` describes ``p(x | y=+1) = N(mean_pos, cov_pos)``,
``p(x | y=-1) = N(mean_neg, cov_neg)`` and ``p(y=+1) = prior_pos``.  Because
the class-conditional densities are known, the posterior ``r(x)`` is exact and
can serve directly as a soft label, and the Bayes error can be computed to
Monte-Carlo precision.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import yaml
from scipy.linalg import solve_triangular
from scipy.special import expit, ndtr

from .errors import (
    DimensionMismatchError,
    InvalidCovarianceError,
    InvalidPriorError,
    NotApplicableError,
    UnknownPresetError,
)
from .estimators import PconfSet, SoftLabelSet
from .rng import make_rng

PRESETS = ("A", "B")

# bounds peak memory of oracle_bayes_error to a few tens of MB at dim 20
_CHUNK = 65536


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class GaussianSetup:
    mean_pos: np.ndarray
    mean_neg: np.ndarray
    cov_pos: np.ndarray
    cov_neg: np.ndarray
    prior_pos: float = 0.5
    name: str = "custom"

    def __post_init__(self):
        mp = _frozen(self.mean_pos).reshape(-1)
        mn = _frozen(self.mean_neg).reshape(-1)
        d = mp.size
        if d == 0:
            raise DimensionMismatchError("means must have at least one component")
        if mn.size != d:
            raise DimensionMismatchError(f"mean_pos has {d} components, mean_neg has {mn.size}")
        covs = []
        for label, cov in (("cov_pos", self.cov_pos), ("cov_neg", self.cov_neg)):
            c = np.array(cov, dtype=float)
            if c.size == d * d and c.ndim <= 1:
                c = c.reshape(d, d)  # row-major flat input
            if c.shape != (d, d):
                raise DimensionMismatchError(f"{label} has shape {c.shape}, expected ({d}, {d})")
            if not np.allclose(c, c.T, rtol=0, atol=1e-12):
                raise InvalidCovarianceError(f"{label} is not symmetric")
            try:
                chol = np.linalg.cholesky(c)
            except np.linalg.LinAlgError:
                raise InvalidCovarianceError(f"{label} is not positive definite") from None
            covs.append((_frozen(c), _frozen(chol)))
        prior = float(self.prior_pos)
        if not (0.0 < prior < 1.0):
            raise InvalidPriorError(prior)
        object.__setattr__(self, "mean_pos", mp)
        object.__setattr__(self, "mean_neg", mn)
        object.__setattr__(self, "cov_pos", covs[0][0])
        object.__setattr__(self, "cov_neg", covs[1][0])
        object.__setattr__(self, "prior_pos", prior)
        object.__setattr__(self, "_chol_pos", covs[0][1])
        object.__setattr__(self, "_chol_neg", covs[1][1])

    @property
    def dim(self):
        return self.mean_pos.size

    def swapped(self):
        """The same model with the class roles exchanged."""
        return GaussianSetup(
            self.mean_neg, self.mean_pos, self.cov_neg, self.cov_pos,
            1.0 - self.prior_pos, name=f"{self.name}-swapped",
        )

    def to_dict(self):
        return {
            "dim": self.dim,
            "mean_pos": self.mean_pos.tolist(),
            "mean_neg": self.mean_neg.tolist(),
            "cov_pos": self.cov_pos.reshape(-1).tolist(),
            "cov_neg": self.cov_neg.reshape(-1).tolist(),
            "prior_pos": self.prior_pos,
        }

    @classmethod
    def from_dict(cls, cfg, name="custom"):
        missing = {"mean_pos", "mean_neg", "cov_pos", "cov_neg", "prior_pos"} - set(cfg)
        if missing:
            raise DimensionMismatchError(f"setup config is missing {sorted(missing)}")
        setup = cls(cfg["mean_pos"], cfg["mean_neg"], cfg["cov_pos"], cfg["cov_neg"],
                    cfg["prior_pos"], name=cfg.get("name", name))
        if "dim" in cfg and int(cfg["dim"]) != setup.dim:
            raise DimensionMismatchError(f"dim is {cfg['dim']} but means have {setup.dim} components")
        return setup


def load_setup(path):
    """Read a custom setup from a JSON or YAML file.

    Keys: ``dim``, ``mean_pos``, ``mean_neg``, ``cov_pos``, ``cov_neg``
    (row-major, flat or nested) and ``prior_pos``.
    """
    path = Path(path)
    text = path.read_text()
    cfg = json.loads(text) if path.suffix == ".json" else yaml.safe_load(text)
    if not isinstance(cfg, dict):
        raise DimensionMismatchError(f"{path}: setup config must be a mapping")
    return GaussianSetup.from_dict(cfg, name=path.stem)


def preset(name):
    """Named synthetic setups: ``A`` (10-d) and ``B`` (20-d).

    Both use ``mean_pos = 0``, ``mean_neg = 1`` (all components), identity
    covariances and equal priors.
    """
    dims = {"A": 10, "B": 20}
    key = str(name).upper()
    if key not in dims:
        raise UnknownPresetError(name, PRESETS)
    d = dims[key]
    eye = np.eye(d)
    return GaussianSetup(np.zeros(d), np.ones(d), eye, eye, 0.5, name=key)


def isotropic(distance, dim=2, prior_pos=0.5, sigma=1.0, name="isotropic"):
    """Equal-covariance isotropic pair with means ``distance`` apart along the diagonal."""
    direction = np.ones(dim) / math.sqrt(dim)
    cov = sigma ** 2 * np.eye(dim)
    return GaussianSetup(np.zeros(dim), distance * direction, cov, cov, prior_pos, name=name)


def resolve_setup(spec):
    """Accept a :class:`GaussianSetup`, a preset name, or a config path."""
    if isinstance(spec, GaussianSetup):
        return spec
    if str(spec).upper() in PRESETS:
        return preset(spec)
    path = Path(spec)
    if path.exists():
        return load_setup(path)
    raise UnknownPresetError(spec, PRESETS)


def _half_sq_mahalanobis(x, mean, chol):
    z = solve_triangular(chol, (x - mean).T, lower=True, check_finite=False)
    return 0.5 * np.einsum("ij,ij->j", z, z)


def log_posterior_odds(setup, x):
    """``log p(y=+1|x) - log p(y=-1|x)`` for one instance or a batch of rows."""
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    x2 = np.atleast_2d(x)
    if x2.shape[-1] != setup.dim:
        raise DimensionMismatchError(f"instance has {x2.shape[-1]} components, setup has {setup.dim}")
    logdet_half = (np.log(np.diag(setup._chol_pos)).sum()
                   - np.log(np.diag(setup._chol_neg)).sum())
    odds = (_half_sq_mahalanobis(x2, setup.mean_neg, setup._chol_neg)
            - _half_sq_mahalanobis(x2, setup.mean_pos, setup._chol_pos)
            - logdet_half
            + math.log(setup.prior_pos) - math.log1p(-setup.prior_pos))
    return float(odds[0]) if single else odds


def posterior(setup, x):
    """Exact class posterior ``p(y=+1 | x)``, evaluated in log space."""
    odds = log_posterior_odds(setup, x)
    return float(expit(odds)) if np.ndim(odds) == 0 else expit(odds)


@dataclass(frozen=True)
class SyntheticDraws:
    """A batch of synthetic draws; row ``i`` of each array is one draw.

    Instances are kept only for inspection and are never written out.
    """

    instances: np.ndarray
    true_class: np.ndarray
    posterior: np.ndarray

    def __len__(self):
        return self.true_class.size

    def soft_labels(self):
        return SoftLabelSet(self.posterior)


def _draw_class(setup, n, positive, rng):
    mean, chol = (setup.mean_pos, setup._chol_pos) if positive else (setup.mean_neg, setup._chol_neg)
    return mean + rng.standard_normal((n, setup.dim)) @ chol.T


def sample_pn(setup, n_per_class, rng=None):
    """Draw exactly ``n_per_class`` instances from each class.

    Positives come first.  ``rng`` is a seed or a :class:`numpy.random.Generator`.
    """
    if n_per_class < 1:
        raise ValueError("n_per_class must be at least 1")
    rng = make_rng(rng)
    x = np.vstack([_draw_class(setup, n_per_class, True, rng),
                   _draw_class(setup, n_per_class, False, rng)])
    y = np.repeat(np.array([1, -1], dtype=np.int8), n_per_class)
    return SyntheticDraws(x, y, posterior(setup, x))


def sample_marginal(setup, n, rng=None):
    """Draw ``n`` instances i.i.d. from the mixture ``p(x)``."""
    rng = make_rng(rng)
    pos = rng.random(n) < setup.prior_pos
    x = np.empty((n, setup.dim))
    k = int(pos.sum())
    x[pos] = _draw_class(setup, k, True, rng)
    x[~pos] = _draw_class(setup, n - k, False, rng)
    y = np.where(pos, 1, -1).astype(np.int8)
    return SyntheticDraws(x, y, posterior(setup, x))


def sample_pconf(setup, n_pos, rng=None):
    """Positive-class instances only, labelled with their exact posteriors."""
    if n_pos < 1:
        raise ValueError("n_pos must be at least 1")
    rng = make_rng(rng)
    x = _draw_class(setup, n_pos, True, rng)
    return PconfSet(posterior(setup, x), setup.prior_pos)


def oracle_bayes_error(setup, m=10_000, rng=None):
    """Monte-Carlo Bayes error: mean of ``min(r(x), 1 - r(x))`` over ``x ~ p(x)``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    rng = make_rng(rng)
    parts = []
    done = 0
    while done < m:
        k = min(_CHUNK, m - done)
        r = sample_marginal(setup, k, rng).posterior
        parts.append(math.fsum(np.minimum(r, 1.0 - r)))
        done += k
    return math.fsum(parts) / m


def analytic_bayes_error_isotropic(setup):
    """Closed form ``Phi(-||mean_pos - mean_neg|| / (2 sigma))``.

    Only valid for equal priors and a shared covariance ``sigma**2 * I``;
    anything else raises :class:`NotApplicableError`.
    """
    if setup.prior_pos != 0.5:
        raise NotApplicableError("closed form requires equal class priors")
    cov = setup.cov_pos
    if not np.array_equal(cov, setup.cov_neg):
        raise NotApplicableError("closed form requires equal class covariances")
    var = cov[0, 0]
    if not np.array_equal(cov, var * np.eye(setup.dim)):
        raise NotApplicableError("closed form requires an isotropic covariance")
    dist = float(np.linalg.norm(setup.mean_pos - setup.mean_neg))
    return float(ndtr(-dist / (2.0 * math.sqrt(var))))
