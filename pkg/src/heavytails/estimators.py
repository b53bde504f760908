"""Scikit-learn style estimators wrapping the maximum-likelihood fitters.

Each estimator accepts a 1-D array (or single-column matrix) of
log-returns in ``fit``, exposes the fitted law through ``distribution_``
and the usual density/score surface, and composes with sklearn tooling
via ``get_params`` / ``set_params``.  The mixture estimator additionally
offers ``predict_proba`` (posterior component probabilities) and
``predict`` (most probable component).
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from ._validation import check_returns
from .estimation import (
    FitConfig,
    fit_meixner_newton,
    fit_nelder_mead,
    fit_normal,
    fit_student_ecme,
    fit_student_mixture_em,
)

__all__ = [
    "NormalFitter",
    "StudentTFitter",
    "StudentMixtureFitter",
    "NormalInverseGaussianFitter",
    "VarianceGammaFitter",
    "GeneralizedHyperbolicFitter",
    "MeixnerFitter",
]


class _BaseFitter(BaseEstimator):
    """Shared fit/score surface for the per-family estimators."""

    def __init__(self, max_iterations=None, loglik_tolerance=None,
                 param_tolerance=1e-8, restarts=5, random_state=0):
        self.max_iterations = max_iterations
        self.loglik_tolerance = loglik_tolerance
        self.param_tolerance = param_tolerance
        self.restarts = restarts
        self.random_state = random_state

    def _config(self) -> FitConfig:
        return FitConfig(
            max_iterations=self.max_iterations,
            loglik_tolerance=self.loglik_tolerance,
            param_tolerance=self.param_tolerance,
            restarts=self.restarts,
            seed=self.random_state if self.random_state is not None else 0,
        )

    def _run_fit(self, x, config):
        raise NotImplementedError

    def fit(self, X, y=None):
        x = check_returns(X)
        result = self._run_fit(x, self._config())
        self.result_ = result
        self.distribution_ = result.distribution
        self.loglik_ = result.loglik
        self.n_iter_ = result.iterations
        self.converged_ = result.converged
        return self

    def _check_fitted(self):
        if not hasattr(self, "distribution_"):
            raise NotFittedError(
                f"{type(self).__name__} must be fitted before use"
            )

    def score_samples(self, X):
        self._check_fitted()
        return np.asarray(self.distribution_.logpdf(check_returns(X)))

    def score(self, X, y=None):
        return float(np.mean(self.score_samples(X)))

    def cdf(self, X):
        self._check_fitted()
        return np.asarray(self.distribution_.cdf(check_returns(X)))

    def ppf(self, q):
        self._check_fitted()
        return self.distribution_.ppf(q)

    def sample(self, n_samples=1, random_state=None):
        self._check_fitted()
        seed = random_state if random_state is not None else self.random_state
        return self.distribution_.rvs(n_samples, seed)

    def aic(self, X):
        x = check_returns(X)
        self._check_fitted()
        ll = float(np.sum(self.distribution_.logpdf(x)))
        return 2.0 * self.distribution_.k - 2.0 * ll

    def bic(self, X):
        x = check_returns(X)
        self._check_fitted()
        ll = float(np.sum(self.distribution_.logpdf(x)))
        return self.distribution_.k * np.log(len(x)) - 2.0 * ll


class NormalFitter(_BaseFitter):
    """Closed-form normal MLE."""

    def _run_fit(self, x, config):
        return fit_normal(x)


class StudentTFitter(_BaseFitter):
    """Student's t MLE via ECME."""

    def _run_fit(self, x, config):
        return fit_student_ecme(x, config)


class StudentMixtureFitter(_BaseFitter):
    """EM fit of a Student mixture with fixed degrees of freedom.

    Parameters
    ----------
    dofs : tuple of float, default (4, 12, 39)
        Fixed degrees of freedom, one per component.
    """

    def __init__(self, dofs=(4.0, 12.0, 39.0), max_iterations=None,
                 loglik_tolerance=None, param_tolerance=1e-8, restarts=5,
                 random_state=0):
        super().__init__(max_iterations, loglik_tolerance, param_tolerance,
                         restarts, random_state)
        self.dofs = dofs

    def _run_fit(self, x, config):
        return fit_student_mixture_em(x, self.dofs, config)

    def predict_proba(self, X):
        """Posterior component probabilities, shape (n, m)."""
        self._check_fitted()
        return self.distribution_.posterior(check_returns(X))

    def predict(self, X):
        """Most probable mixture component per observation."""
        return np.argmax(self.predict_proba(X), axis=1)


class NormalInverseGaussianFitter(_BaseFitter):
    """NIG MLE via multi-start Nelder-Mead."""

    def _run_fit(self, x, config):
        return fit_nelder_mead("NIG", x, config)


class VarianceGammaFitter(_BaseFitter):
    """Variance gamma MLE via multi-start Nelder-Mead."""

    def _run_fit(self, x, config):
        return fit_nelder_mead("VG", x, config)


class GeneralizedHyperbolicFitter(_BaseFitter):
    """Five-parameter GH MLE via multi-start Nelder-Mead."""

    def _run_fit(self, x, config):
        return fit_nelder_mead("GH", x, config)


class MeixnerFitter(_BaseFitter):
    """Meixner MLE via damped Newton (analytic score), NM fallback."""

    def __init__(self, method="newton", max_iterations=None,
                 loglik_tolerance=None, param_tolerance=1e-8, restarts=5,
                 random_state=0):
        super().__init__(max_iterations, loglik_tolerance, param_tolerance,
                         restarts, random_state)
        self.method = method

    def _run_fit(self, x, config):
        if self.method == "newton":
            return fit_meixner_newton(x, config)
        if self.method == "nelder-mead":
            return fit_nelder_mead("Meixner", x, config)
        raise ValueError(f"unknown method {self.method!r}")
