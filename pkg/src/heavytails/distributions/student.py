"""Non-standardized Student's t distribution."""

from __future__ import annotations

import math

import numpy as np
from scipy.special import betaincinv, gammaln

from .._validation import check_positive, check_real
from ..errors import DomainError
from ..special_functions import regularized_incomplete_beta
from .base import Distribution, normalize_random_state


def student_logpdf(x, mu: float, sigma: float, nu: float):
    """log density of t(nu) with location mu and scale sigma, vectorized."""
    z = (np.asarray(x, dtype=float) - mu) / sigma
    return (
        gammaln(0.5 * (nu + 1.0))
        - gammaln(0.5 * nu)
        - 0.5 * math.log(math.pi * nu)
        - math.log(sigma)
        - 0.5 * (nu + 1.0) * np.log1p(z * z / nu)
    )


def student_cdf(x, mu: float, sigma: float, nu: float):
    """CDF via the regularized incomplete beta function."""
    z = (np.asarray(x, dtype=float) - mu) / sigma
    w = nu / (nu + z * z)
    half_tail = 0.5 * regularized_incomplete_beta(0.5 * nu, 0.5, w)
    return np.where(z <= 0.0, half_tail, 1.0 - half_tail)


def student_sf(x, mu: float, sigma: float, nu: float):
    return student_cdf(2.0 * mu - np.asarray(x, dtype=float), mu, sigma, nu)


def student_ppf(p, mu: float, sigma: float, nu: float):
    ps = np.asarray(p, dtype=float)
    w = betaincinv(0.5 * nu, 0.5, 2.0 * np.minimum(ps, 1.0 - ps))
    with np.errstate(divide="ignore"):
        t = np.sqrt(nu * (1.0 - w) / w)
    return mu + sigma * np.where(ps < 0.5, -t, np.where(ps > 0.5, t, 0.0))


class StudentT(Distribution):
    """t distribution with nu > 0 degrees of freedom, location and scale."""

    family = "St"

    def __init__(self, nu: float, mu: float, sigma: float):
        self.nu = check_positive(nu, "nu")
        self.mu = check_real(mu, "mu")
        self.sigma = check_positive(sigma, "sigma")

    @property
    def k(self) -> int:
        return 3

    def params(self) -> dict:
        return {"nu": self.nu, "mu": self.mu, "sigma": self.sigma}

    def _location_scale(self):
        return self.mu, self.sigma

    def logpdf(self, x):
        out = student_logpdf(x, self.mu, self.sigma, self.nu)
        return float(out) if np.ndim(x) == 0 else out

    def cdf(self, x):
        out = student_cdf(x, self.mu, self.sigma, self.nu)
        return float(out) if np.ndim(x) == 0 else out

    def sf(self, x):
        out = student_sf(x, self.mu, self.sigma, self.nu)
        return float(out) if np.ndim(x) == 0 else out

    def ppf(self, p):
        ps = np.asarray(p, dtype=float)
        if np.any(ps <= 0.0) or np.any(ps >= 1.0):
            raise DomainError("quantile requires probabilities in (0, 1)")
        out = student_ppf(ps, self.mu, self.sigma, self.nu)
        return float(out) if np.ndim(p) == 0 else out

    def rvs(self, size: int, random_state=None):
        rng = normalize_random_state(random_state)
        return self.mu + self.sigma * rng.standard_t(self.nu, size)
