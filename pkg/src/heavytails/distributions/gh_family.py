"""Generalized hyperbolic distribution and its NIG / variance gamma subfamilies.

All three are normal mean-variance mixtures: X = mu + beta*W + sqrt(W)*Z
with W generalized-inverse-Gaussian (GH, NIG) or gamma (VG) distributed.
Densities are evaluated fully in log scale; the parameter-set boundaries
(delta = 0, alpha = |beta|, alpha = 0) use the analytic limits of the
normalizing constant, so every parameter vector admitted by the invariants
evaluates to a proper density.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln
from scipy.stats import geninvgauss

from .._validation import check_positive, check_real
from ..errors import DomainError
from ..special_functions import log_bessel_k
from .base import Distribution, QuadratureCdfMixin, normalize_random_state
from .student import student_logpdf

_LOG_2PI = math.log(2.0 * math.pi)


def vg_logpdf(x, lam: float, alpha: float, beta: float, mu: float):
    """Variance gamma log density; finite at x = mu when lam > 1/2."""
    d = np.asarray(x, dtype=float) - mu
    gamma2 = alpha * alpha - beta * beta
    const = (
        lam * math.log(gamma2)
        - 0.5 * math.log(math.pi)
        - gammaln(lam)
        - (lam - 0.5) * math.log(2.0 * alpha)
    )
    ad = np.abs(d)
    out = np.full(np.shape(ad), np.inf)
    pos = ad > 0.0
    if np.any(pos):
        out[pos] = (
            (lam - 0.5) * np.log(ad[pos])
            + log_bessel_k(lam - 0.5, alpha * ad[pos])
            + beta * d[pos]
        )
    if np.any(~pos) and lam > 0.5:
        # removable singularity: |d|^(lam-1/2) K_{lam-1/2}(alpha |d|) has a
        # finite limit at d = 0
        out[~pos] = (
            -math.log(2.0)
            + gammaln(lam - 0.5)
            + (lam - 0.5) * math.log(2.0 / alpha)
        )
    return const + out


def gh_logpdf(x, lam: float, alpha: float, beta: float, delta: float, mu: float):
    """Generalized hyperbolic log density covering all invariant-valid corners."""
    if alpha == 0.0:
        # beta = 0 and lam < 0 by the invariants: exactly a Student's t
        nu = -2.0 * lam
        return student_logpdf(x, mu, delta / math.sqrt(nu), nu)
    if delta == 0.0:
        # lam > 0: the variance gamma boundary
        return vg_logpdf(x, lam, alpha, beta, mu)
    d = np.asarray(x, dtype=float) - mu
    gamma2 = alpha * alpha - beta * beta
    s = np.hypot(delta, d)
    xpart = (
        0.5 * (lam - 0.5) * np.log(delta * delta + d * d)
        + log_bessel_k(lam - 0.5, alpha * s)
        + beta * d
    )
    if gamma2 > 0.0:
        const = (
            0.5 * lam * math.log(gamma2)
            - 0.5 * _LOG_2PI
            - (lam - 0.5) * math.log(alpha)
            - lam * math.log(delta)
            - log_bessel_k(lam, delta * math.sqrt(gamma2))
        )
    else:
        # |beta| = alpha (lam < 0): gamma^lam / K_lam(delta*gamma) has a
        # finite limit as gamma -> 0
        const = (
            math.log(2.0)
            - gammaln(-lam)
            + lam * math.log(2.0)
            - 2.0 * lam * math.log(delta)
            - 0.5 * _LOG_2PI
            - (lam - 0.5) * math.log(alpha)
        )
    return const + xpart


def _gig_moment_ratio(lam: float, delta: float, gamma: float, order: int) -> float:
    """E[W^order] for W ~ GIG(lam, delta^2, gamma^2), via Bessel ratios."""
    zeta = delta * gamma
    log_ratio = log_bessel_k(lam + order, zeta) - log_bessel_k(lam, zeta)
    return (delta / gamma) ** order * math.exp(log_ratio)


class GeneralizedHyperbolic(QuadratureCdfMixin, Distribution):
    """GH(lambda, alpha, beta, delta, mu).

    Invariants: 0 <= |beta| < alpha and delta >= 0 when lambda > 0,
    delta > 0 when lambda = 0, and 0 <= |beta| <= alpha with delta > 0
    when lambda < 0.
    """

    family = "GH"

    def __init__(self, lam: float, alpha: float, beta: float, delta: float,
                 mu: float):
        self.lam = check_real(lam, "lam")
        self.alpha = check_real(alpha, "alpha")
        self.beta = check_real(beta, "beta")
        self.delta = check_real(delta, "delta")
        self.mu = check_real(mu, "mu")
        if self.alpha < 0.0:
            raise DomainError("alpha must be nonnegative")
        if self.lam > 0.0:
            if self.delta < 0.0 or not abs(self.beta) < self.alpha:
                raise DomainError(
                    "lambda > 0 requires delta >= 0 and |beta| < alpha"
                )
        elif self.lam == 0.0:
            if self.delta <= 0.0 or not abs(self.beta) < self.alpha:
                raise DomainError(
                    "lambda = 0 requires delta > 0 and |beta| < alpha"
                )
        else:
            if self.delta <= 0.0 or abs(self.beta) > self.alpha:
                raise DomainError(
                    "lambda < 0 requires delta > 0 and |beta| <= alpha"
                )

    @property
    def k(self) -> int:
        return 5

    def params(self) -> dict:
        return {"lam": self.lam, "alpha": self.alpha, "beta": self.beta,
                "delta": self.delta, "mu": self.mu}

    def _decay_rates(self):
        return self.alpha + self.beta, self.alpha - self.beta

    def _location_scale(self):
        if self.alpha == 0.0:
            nu = -2.0 * self.lam
            sd = self.delta / math.sqrt(max(nu - 2.0, 0.5))
            return self.mu, sd
        gamma2 = self.alpha**2 - self.beta**2
        if self.delta > 0.0 and gamma2 > 0.0:
            gamma = math.sqrt(gamma2)
            ew = _gig_moment_ratio(self.lam, self.delta, gamma, 1)
            ew2 = _gig_moment_ratio(self.lam, self.delta, gamma, 2)
            var = ew + self.beta**2 * max(ew2 - ew * ew, 0.0)
            if math.isfinite(ew) and math.isfinite(var) and var > 0.0:
                return self.mu + self.beta * ew, math.sqrt(var)
        # boundary parameter sets: fall back to crude but safe proxies
        scale = self.delta + 1.0 / (self.alpha - abs(self.beta) + 1e-6)
        return self.mu, scale

    def logpdf(self, x):
        out = gh_logpdf(x, self.lam, self.alpha, self.beta, self.delta, self.mu)
        return float(out) if np.ndim(x) == 0 else out

    def rvs(self, size: int, random_state=None):
        rng = normalize_random_state(random_state)
        if self.alpha == 0.0:
            nu = -2.0 * self.lam
            return self.mu + self.delta / math.sqrt(nu) * rng.standard_t(nu, size)
        gamma2 = self.alpha**2 - self.beta**2
        if self.delta == 0.0:
            w = rng.gamma(self.lam, 2.0 / gamma2, size)
        elif gamma2 == 0.0:
            # inverse-gamma mixing at the |beta| = alpha boundary
            w = self.delta**2 / rng.gamma(-self.lam, 2.0, size)
        else:
            b = self.delta * math.sqrt(gamma2)
            w = geninvgauss.rvs(self.lam, b, scale=self.delta / math.sqrt(gamma2),
                                size=size, random_state=rng)
        return self.mu + self.beta * w + np.sqrt(w) * rng.standard_normal(size)


class NormalInverseGaussian(QuadratureCdfMixin, Distribution):
    """NIG(alpha, beta, delta, mu) with alpha, delta > 0 and |beta| <= alpha."""

    family = "NIG"

    def __init__(self, alpha: float, beta: float, delta: float, mu: float):
        self.alpha = check_positive(alpha, "alpha")
        self.beta = check_real(beta, "beta")
        self.delta = check_positive(delta, "delta")
        self.mu = check_real(mu, "mu")
        if abs(self.beta) > self.alpha:
            raise DomainError("NIG requires |beta| <= alpha")

    @property
    def k(self) -> int:
        return 4

    def params(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "delta": self.delta,
                "mu": self.mu}

    def _decay_rates(self):
        return self.alpha + self.beta, self.alpha - self.beta

    def _location_scale(self):
        gamma2 = self.alpha**2 - self.beta**2
        if gamma2 > 0.0:
            gamma = math.sqrt(gamma2)
            mean = self.mu + self.delta * self.beta / gamma
            var = self.delta * self.alpha**2 / gamma**3
            return mean, math.sqrt(var)
        return self.mu, self.delta + 1.0 / self.alpha

    def logpdf(self, x):
        d = np.asarray(x, dtype=float) - self.mu
        s = np.hypot(self.delta, d)
        gamma = math.sqrt(max(self.alpha**2 - self.beta**2, 0.0))
        out = (
            math.log(self.alpha * self.delta / math.pi)
            + self.delta * gamma
            + self.beta * d
            - np.log(s)
            + log_bessel_k(1.0, self.alpha * s)
        )
        return float(out) if np.ndim(x) == 0 else out

    def rvs(self, size: int, random_state=None):
        rng = normalize_random_state(random_state)
        gamma2 = self.alpha**2 - self.beta**2
        if gamma2 == 0.0:
            w = self.delta**2 / rng.gamma(0.5, 2.0, size)
        else:
            b = self.delta * math.sqrt(gamma2)
            w = geninvgauss.rvs(-0.5, b, scale=self.delta / math.sqrt(gamma2),
                                size=size, random_state=rng)
        return self.mu + self.beta * w + np.sqrt(w) * rng.standard_normal(size)


class VarianceGamma(QuadratureCdfMixin, Distribution):
    """VG(lambda, alpha, beta, mu) with lambda, alpha > 0 and |beta| < alpha."""

    family = "VG"

    def __init__(self, lam: float, alpha: float, beta: float, mu: float):
        self.lam = check_positive(lam, "lam")
        self.alpha = check_positive(alpha, "alpha")
        self.beta = check_real(beta, "beta")
        self.mu = check_real(mu, "mu")
        if abs(self.beta) >= self.alpha:
            raise DomainError("VG requires |beta| < alpha")

    @property
    def k(self) -> int:
        return 4

    def params(self) -> dict:
        return {"lam": self.lam, "alpha": self.alpha, "beta": self.beta,
                "mu": self.mu}

    def _decay_rates(self):
        return self.alpha + self.beta, self.alpha - self.beta

    def _location_scale(self):
        gamma2 = self.alpha**2 - self.beta**2
        ew = 2.0 * self.lam / gamma2
        varw = ew * 2.0 / gamma2
        var = ew + self.beta**2 * varw
        return self.mu + self.beta * ew, math.sqrt(var)

    def logpdf(self, x):
        out = vg_logpdf(x, self.lam, self.alpha, self.beta, self.mu)
        return float(out) if np.ndim(x) == 0 else out

    def rvs(self, size: int, random_state=None):
        rng = normalize_random_state(random_state)
        gamma2 = self.alpha**2 - self.beta**2
        w = rng.gamma(self.lam, 2.0 / gamma2, size)
        return self.mu + self.beta * w + np.sqrt(w) * rng.standard_normal(size)
