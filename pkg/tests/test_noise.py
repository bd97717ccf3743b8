import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.stats import truncnorm

from bayeserr.errors import InvalidLabelError
from bayeserr.estimators import SoftLabelSet
from bayeserr.noise import NoiseSpec, corrupt_set, perturb, sign_label
from bayeserr.rng import make_rng

SPEC = NoiseSpec(0.4)


def test_noise_spec():
    assert NoiseSpec().sigma == 0.4
    for bad in (0, -1):
        with pytest.raises(ValueError):
            NoiseSpec(bad)


def test_degenerate_truncation():
    assert perturb(0.0, SPEC, 1) == 0.0
    assert perturb(1.0, SPEC, 1) == 1.0
    with pytest.raises(InvalidLabelError):
        perturb(1.5, SPEC, 1)


@pytest.mark.parametrize("c", [0.1, 0.3, 0.5, 0.7, 0.9])
def test_mean_preservation_and_support(c):
    u = perturb(np.full(10**6, c), SPEC, make_rng(11))
    assert abs(u.mean() - c) <= 5 * u.std() / 10**3
    a = min(c, 1 - c)
    assert u.min() >= c - a and u.max() <= c + a


def test_examples():
    u = perturb(np.full(10**6, 0.5), SPEC, 2)
    assert abs(u.mean() - 0.5) <= 0.002 and u.min() >= 0 and u.max() <= 1
    u = perturb(np.full(10**6, 0.8), SPEC, 3)
    assert u.min() >= 0.6 and u.max() <= 1.0 and abs(u.mean() - 0.8) <= 0.002


def test_inverse_cdf_branch_matches_truncnorm():
    # a / sigma = 0.01 / 0.4 is below the rejection cut-off
    c = 0.01
    u = perturb(np.full(200_000, c), SPEC, 4)
    a = c / 0.4
    ref = truncnorm(-a, a, loc=c, scale=0.4)
    assert abs(u.mean() - c) <= 5 * ref.std() / math.sqrt(u.size)
    assert u.std() == pytest.approx(ref.std(), rel=0.01)


def test_sign_label():
    assert sign_label(0.7) == 1
    assert sign_label(0.3) == -1
    assert sign_label(0.5) == 1
    with pytest.raises(InvalidLabelError):
        sign_label(-0.2)


def test_corrupt_set():
    out = corrupt_set(SoftLabelSet([0.0, 1.0]), SPEC, 0)
    assert out.noisy_values.tolist() == [0.0, 1.0]
    assert out.signs.tolist() == [-1, 1]
    c = np.linspace(0.05, 0.95, 19)
    tiny = corrupt_set(c, NoiseSpec(1e-9), 1)
    assert np.max(np.abs(tiny.noisy_values - c)) <= 1e-8
    a, b = corrupt_set(c, SPEC, 5), corrupt_set(c, SPEC, 5)
    assert np.array_equal(a.noisy_values, b.noisy_values)
    assert np.array_equal(a.signs, sign_label(c))


@given(st.floats(0.0, 1.0), st.integers(0, 2**32 - 1))
def test_support_property(c, seed):
    u = perturb(np.full(50, c), SPEC, seed)
    lo, hi = max(0.0, 2 * c - 1), min(1.0, 2 * c)
    assert np.all(u >= lo - 1e-15) and np.all(u <= hi + 1e-15)


def _expected_min_truncated(c, sigma):
    a = min(c, 1 - c)
    dist = truncnorm(-a / sigma, a / sigma, loc=c, scale=sigma)
    f = lambda u: min(u, 1 - u) * dist.pdf(u)
    lo, hi = c - a, c + a
    if lo < 0.5 < hi:
        return quad(f, lo, 0.5, epsabs=1e-13)[0] + quad(f, 0.5, hi, epsabs=1e-13)[0]
    return quad(f, lo, hi, epsabs=1e-13)[0]


def test_jensen_direction_quadrature_and_mc():
    c = 0.55
    exact = _expected_min_truncated(c, 0.4)
    assert exact < min(c, 1 - c) - 0.05
    u = perturb(np.full(10**6, c), SPEC, 8)
    mc = np.minimum(u, 1 - u)
    assert abs(mc.mean() - exact) <= 4 * mc.std() / 1000
    assert mc.mean() < min(c, 1 - c)


def test_jensen_equality_when_support_avoids_half():
    # truncation to [0, 0.4] never crosses 0.5, so min(u, 1-u) = u is linear
    assert _expected_min_truncated(0.2, 0.4) == pytest.approx(0.2, abs=1e-10)
