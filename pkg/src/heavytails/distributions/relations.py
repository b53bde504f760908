"""Structural relations inside the generalized hyperbolic family.

The NIG embedding is exact; the Student, variance gamma and normal
relations are weak limits, exposed here as parameter sequences so callers
(and tests) can verify pointwise log-density convergence along the
declared paths.
"""

from __future__ import annotations

import math

from .._validation import check_positive, check_real
from .gh_family import GeneralizedHyperbolic, NormalInverseGaussian, VarianceGamma


def nig_as_gh(nig: NormalInverseGaussian) -> GeneralizedHyperbolic:
    """Embed a NIG law as the GH member with lambda = -1/2."""
    return GeneralizedHyperbolic(-0.5, nig.alpha, nig.beta, nig.delta, nig.mu)


def gh_student_limit(nu: float, mu: float, sigma: float,
                     epsilons=(1e-1, 1e-2, 1e-3, 1e-4)) -> list[GeneralizedHyperbolic]:
    """GH parameter sequence converging weakly to t(nu, mu, sigma).

    Path: lambda = -nu/2, beta = 0, delta = sigma*sqrt(nu), alpha = eps -> 0.
    """
    nu = check_positive(nu, "nu")
    mu = check_real(mu, "mu")
    sigma = check_positive(sigma, "sigma")
    lam = -0.5 * nu
    delta = sigma * math.sqrt(nu)
    return [GeneralizedHyperbolic(lam, eps, 0.0, delta, mu) for eps in epsilons]


def gh_vg_limit(vg: VarianceGamma,
                deltas=(1e-2, 1e-3, 1e-4, 1e-6)) -> list[GeneralizedHyperbolic]:
    """GH parameter sequence converging to the variance gamma law as delta -> 0."""
    return [
        GeneralizedHyperbolic(vg.lam, vg.alpha, vg.beta, d, vg.mu) for d in deltas
    ]


def gh_normal_limit(mu: float, sigma: float, lam: float = 1.0,
                    scales=(2.0, 4.0, 8.0, 16.0)) -> list[GeneralizedHyperbolic]:
    """GH sequence with alpha, delta -> infinity and delta/alpha -> sigma^2."""
    mu = check_real(mu, "mu")
    sigma = check_positive(sigma, "sigma")
    return [
        GeneralizedHyperbolic(lam, s / sigma, 0.0, s * sigma, mu) for s in scales
    ]
