"""Meixner distribution.

The density involves the squared modulus of a complex gamma function and
decays like exp(-(pi -+ beta) |x - mu| / alpha), lighter than any Student
tail, which makes a Student's t envelope suitable for rejection sampling.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

from .._validation import check_positive, check_real
from ..errors import DomainError
from ..special_functions import log_abs_gamma_complex
from .base import Distribution, QuadratureCdfMixin, normalize_random_state
from .student import student_logpdf, student_ppf


def meixner_logpdf(x, alpha: float, beta: float, mu: float, delta: float):
    y = (np.asarray(x, dtype=float) - mu) / alpha
    return (
        2.0 * delta * math.log(2.0 * math.cos(0.5 * beta))
        - math.log(2.0 * alpha * math.pi)
        - gammaln(2.0 * delta)
        + beta * y
        + 2.0 * log_abs_gamma_complex(delta, y)
    )


class Meixner(QuadratureCdfMixin, Distribution):
    """Meixner(alpha, beta, mu, delta): scale, skewness, location, shape."""

    family = "Meixner"

    _ENVELOPE_DOF = 2.0

    def __init__(self, alpha: float, beta: float, mu: float, delta: float):
        self.alpha = check_positive(alpha, "alpha")
        self.beta = check_real(beta, "beta")
        self.mu = check_real(mu, "mu")
        self.delta = check_positive(delta, "delta")
        if not -math.pi < self.beta < math.pi:
            raise DomainError("Meixner requires -pi < beta < pi")

    @property
    def k(self) -> int:
        return 4

    def params(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "mu": self.mu,
                "delta": self.delta}

    def _decay_rates(self):
        return (math.pi + self.beta) / self.alpha, (math.pi - self.beta) / self.alpha

    def _location_scale(self):
        mean = self.mu + self.alpha * self.delta * math.tan(0.5 * self.beta)
        var = self.alpha**2 * self.delta / (1.0 + math.cos(self.beta))
        return mean, math.sqrt(var)

    def logpdf(self, x):
        out = meixner_logpdf(x, self.alpha, self.beta, self.mu, self.delta)
        return float(out) if np.ndim(x) == 0 else out

    def _envelope(self):
        cached = getattr(self, "_envelope_cache", None)
        if cached is None:
            loc, scale = self._location_scale()
            nu = self._ENVELOPE_DOF
            probs = np.linspace(1e-9, 1.0 - 1e-9, 8192)
            grid = student_ppf(probs, loc, scale, nu)
            log_ratio = self.logpdf(grid) - student_logpdf(grid, loc, scale, nu)
            bound = math.exp(float(np.max(log_ratio))) * 1.1
            cached = (loc, scale, nu, bound)
            self._envelope_cache = cached
        return cached

    def __getstate__(self):
        state = super().__getstate__()
        state.pop("_envelope_cache", None)
        return state

    def rvs(self, size: int, random_state=None):
        rng = normalize_random_state(random_state)
        loc, scale, nu, bound = self._envelope()
        draws = np.empty(size)
        have = 0
        while have < size:
            need = size - have
            batch = max(int(need * bound * 1.2) + 16, need)
            cand = loc + scale * rng.standard_t(nu, batch)
            log_accept = (
                self.logpdf(cand)
                - student_logpdf(cand, loc, scale, nu)
                - math.log(bound)
            )
            keep = np.log(rng.random(batch)) < log_accept
            accepted = cand[keep][:need]
            draws[have:have + len(accepted)] = accepted
            have += len(accepted)
        return draws
