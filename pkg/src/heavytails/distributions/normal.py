"""Normal distribution (the comparison baseline)."""

from __future__ import annotations

import math

import numpy as np
from scipy.special import ndtr, ndtri

from .._validation import check_positive, check_real
from .base import Distribution, normalize_random_state
from ..errors import DomainError

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


class Normal(Distribution):
    """N(mu, sigma^2) with scale parameter sigma > 0."""

    family = "N"

    def __init__(self, mu: float, sigma: float):
        self.mu = check_real(mu, "mu")
        self.sigma = check_positive(sigma, "sigma")

    @property
    def k(self) -> int:
        return 2

    def params(self) -> dict:
        return {"mu": self.mu, "sigma": self.sigma}

    def _location_scale(self):
        return self.mu, self.sigma

    def logpdf(self, x):
        z = (np.asarray(x, dtype=float) - self.mu) / self.sigma
        out = -0.5 * z * z - math.log(self.sigma) - _LOG_SQRT_2PI
        return float(out) if np.ndim(x) == 0 else out

    def cdf(self, x):
        z = (np.asarray(x, dtype=float) - self.mu) / self.sigma
        out = ndtr(z)
        return float(out) if np.ndim(x) == 0 else out

    def sf(self, x):
        z = (np.asarray(x, dtype=float) - self.mu) / self.sigma
        out = ndtr(-z)
        return float(out) if np.ndim(x) == 0 else out

    def ppf(self, p):
        ps = np.asarray(p, dtype=float)
        if np.any(ps <= 0.0) or np.any(ps >= 1.0):
            raise DomainError("quantile requires probabilities in (0, 1)")
        out = self.mu + self.sigma * ndtri(ps)
        return float(out) if np.ndim(p) == 0 else out

    def rvs(self, size: int, random_state=None):
        rng = normalize_random_state(random_state)
        return self.mu + self.sigma * rng.standard_normal(size)
