"""Finite mixtures of Student's t distributions with fixed degrees of freedom.

The canonical fixed-dof scenarios carry their own family tags: dofs (4, 12)
is "2St12", (4, 39) is "2St39" and (4, 12, 39) is "3St".  Components are
stored in ascending dof order, so component labels are identified by their
degrees of freedom rather than by weight.
"""

from __future__ import annotations

import numpy as np
from scipy.special import logsumexp

from .._validation import check_positive, check_real
from ..errors import DomainError
from .base import Distribution, normalize_random_state
from .student import student_cdf, student_logpdf, student_sf

_CANONICAL_TAGS = {(4.0, 12.0): "2St12", (4.0, 39.0): "2St39", (4.0, 12.0, 39.0): "3St"}


def mixture_family_tag(dofs) -> str:
    return _CANONICAL_TAGS.get(tuple(float(v) for v in dofs), "mSt")


class StudentTMixture(Distribution):
    """Mixture of m >= 1 Student's t components with fixed dofs.

    Parameters
    ----------
    components : sequence of (mu_j, sigma_j, nu_j)
        Location, scale and (fixed) degrees of freedom per component,
        in ascending dof order.
    weights : sequence of m-1 floats
        Mixing weights p_1 .. p_{m-1}; the last weight is implied.
    """

    def __init__(self, components, weights=()):
        comps = [
            (check_real(mu, "mu"), check_positive(sigma, "sigma"),
             check_positive(nu, "nu"))
            for mu, sigma, nu in components
        ]
        if len(comps) < 1:
            raise DomainError("mixture needs at least one component")
        dofs = [c[2] for c in comps]
        if any(b < a for a, b in zip(dofs, dofs[1:])):
            raise DomainError("components must be in ascending dof order")
        w = np.asarray(weights, dtype=float)
        if w.size != len(comps) - 1:
            raise DomainError(
                f"expected {len(comps) - 1} free weights, got {w.size}"
            )
        if np.any(w < 0.0) or w.sum() > 1.0 + 1e-12:
            raise DomainError("weights must be nonnegative with sum <= 1")
        self.components = tuple(comps)
        self.weights = tuple(float(v) for v in w)
        self.family = mixture_family_tag(dofs)

    @property
    def m(self) -> int:
        return len(self.components)

    @property
    def full_weights(self) -> np.ndarray:
        w = np.asarray(self.weights, dtype=float)
        return np.concatenate([w, [max(0.0, 1.0 - w.sum())]])

    @property
    def dofs(self) -> tuple[float, ...]:
        return tuple(c[2] for c in self.components)

    @property
    def k(self) -> int:
        # (mu, sigma) per component plus m-1 free weights; dofs are fixed
        return 3 * self.m - 1

    def params(self) -> dict:
        return {
            "components": [
                {"mu": mu, "sigma": sigma, "nu": nu}
                for mu, sigma, nu in self.components
            ],
            "weights": list(self.weights),
        }

    def _location_scale(self):
        w = self.full_weights
        mus = np.array([c[0] for c in self.components])
        sigmas = np.array([c[1] for c in self.components])
        loc = float(np.dot(w, mus))
        spread = float(np.sqrt(np.dot(w, sigmas**2 + (mus - loc) ** 2)))
        return loc, spread

    def component_logpdf(self, x) -> np.ndarray:
        """(n, m) matrix of per-component log densities."""
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        return np.column_stack(
            [student_logpdf(xs, mu, sigma, nu) for mu, sigma, nu in self.components]
        )

    def _weighted_logpdf(self, x) -> np.ndarray:
        with np.errstate(divide="ignore"):
            logw = np.log(self.full_weights)
        return self.component_logpdf(x) + logw[None, :]

    def logpdf(self, x):
        out = logsumexp(self._weighted_logpdf(x), axis=1)
        return float(out[0]) if np.ndim(x) == 0 else out.reshape(np.shape(x))

    def posterior(self, x) -> np.ndarray:
        """(n, m) matrix of posterior component probabilities at each x."""
        lw = self._weighted_logpdf(x)
        tau = np.exp(lw - logsumexp(lw, axis=1, keepdims=True))
        return tau / tau.sum(axis=1, keepdims=True)

    def cdf(self, x):
        xs = np.asarray(x, dtype=float)
        w = self.full_weights
        out = sum(
            wj * student_cdf(xs, mu, sigma, nu)
            for wj, (mu, sigma, nu) in zip(w, self.components)
        )
        return float(out) if np.ndim(x) == 0 else out

    def sf(self, x):
        xs = np.asarray(x, dtype=float)
        w = self.full_weights
        out = sum(
            wj * student_sf(xs, mu, sigma, nu)
            for wj, (mu, sigma, nu) in zip(w, self.components)
        )
        return float(out) if np.ndim(x) == 0 else out

    def rvs(self, size: int, random_state=None):
        rng = normalize_random_state(random_state)
        labels = rng.choice(self.m, size=size, p=self.full_weights)
        draws = np.empty(size)
        for j, (mu, sigma, nu) in enumerate(self.components):
            mask = labels == j
            n_j = int(mask.sum())
            if n_j:
                draws[mask] = mu + sigma * rng.standard_t(nu, n_j)
        return draws
