import numpy as np
import pytest

from hafnet.core import AlphaProfile, NetworkInstance


def make_profile(alpha):
    """Profile with groups inferred from the exponent values (loose binning
    for synthetic tests; valid HAF groups only)."""
    alpha = np.asarray(alpha, dtype=float)
    group = np.zeros(alpha.size, dtype=int)
    group[(alpha >= 0.7) & (alpha <= 0.9)] = 1
    group[(alpha >= 1.8) & (alpha <= 2.2)] = 2
    group[(alpha >= 2.75) & (alpha <= 3.25)] = 3
    return AlphaProfile(alpha=alpha, group=group)


def make_instance(gamma, alpha, bandwidth_hz=20e6):
    gamma = np.asarray(gamma, dtype=float)
    return NetworkInstance.from_gamma(gamma, make_profile(alpha), bandwidth_hz)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_instance(rng, n_users, n_bs, gamma_lo=0.1, gamma_hi=10.0):
    """Random valid instance with alphas drawn across all four groups."""
    gamma = rng.uniform(gamma_lo, gamma_hi, size=(n_users, n_bs))
    lo = np.array([0.4, 0.7, 1.8, 2.75])
    hi = np.array([0.6, 0.9, 2.2, 3.25])
    g = rng.integers(0, 4, size=n_users)
    alpha = lo[g] + rng.random(n_users) * (hi[g] - lo[g])
    prof = AlphaProfile(alpha=alpha, group=g)
    return NetworkInstance.from_gamma(gamma, prof, 20e6)
