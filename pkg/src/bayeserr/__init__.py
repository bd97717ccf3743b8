"""Instance-free Bayes error estimation for binary classification."""

from .errors import BayesErrorInputError
from .estimators import (
    BayesEstimate,
    EstimatorKind,
    Interval,
    IntervalMethod,
    LabelKind,
    PconfSet,
    SignedNoisySet,
    SoftLabelSet,
    attach_intervals,
    estimate,
    estimate_noisy_naive,
    estimate_noisy_signed,
    estimate_pconf,
    estimate_prior,
    estimate_soft,
    estimate_uncertainty,
    hoeffding_halfwidth,
    normal_interval,
)
from .gaussian import (
    GaussianSetup,
    analytic_bayes_error_isotropic,
    oracle_bayes_error,
    posterior,
    preset,
    sample_pconf,
    sample_pn,
)
from .noise import NoiseSpec, corrupt_set, perturb, sign_label
from .rng import make_rng

__version__ = "0.1.0"
