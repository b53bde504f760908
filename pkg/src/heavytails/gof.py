"""Goodness-of-fit measures: KS, AD, AIC, BIC and the chi-square test.

KS and AD are used as descriptive distances computed at the fitted
parameters (no estimation-bias correction), which is how the comparison
tables consume them.  The chi-square test uses equal-probability bins under
the tested model, with adjacent bins merged until every expected count is
at least five.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import chi2 as _chi2

from ._validation import check_returns
from .distributions import Distribution
from .errors import DataError, DomainError
from .estimation import FitResult

__all__ = [
    "EmpiricalCdf",
    "GofReport",
    "ChiSquareResult",
    "ks_statistic",
    "ad_statistic",
    "aic",
    "bic",
    "chi_square_test",
    "gof_report",
]

_AD_CLAMP = 1e-15


@dataclass(frozen=True)
class EmpiricalCdf:
    """Sorted sample defining the empirical distribution function."""

    sorted_data: np.ndarray
    n: int

    @classmethod
    def from_sample(cls, data) -> "EmpiricalCdf":
        x = np.sort(check_returns(data, min_samples=1))
        return cls(sorted_data=x, n=len(x))


@dataclass(frozen=True)
class GofReport:
    """KS, AD, AIC and BIC for one (series, model) pair."""

    ks: float
    ad: float
    aic: float
    bic: float
    loglik: float
    k: int
    n: int

    def to_dict(self) -> dict:
        return {
            "ks": self.ks, "ad": self.ad, "aic": self.aic, "bic": self.bic,
            "loglik": self.loglik, "k": self.k, "n": self.n,
        }


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    dof: int
    p_value: float
    bins_used: int
    rejected_at_5pct: bool

    def to_dict(self) -> dict:
        return {
            "statistic": self.statistic, "dof": self.dof,
            "p_value": self.p_value, "bins_used": self.bins_used,
            "rejected_at_5pct": self.rejected_at_5pct,
        }


def ks_statistic(ecdf: EmpiricalCdf, dist: Distribution) -> float:
    """Exact sup-distance between the empirical and model CDFs."""
    f = np.asarray(dist.cdf(ecdf.sorted_data), dtype=float)
    i = np.arange(1, ecdf.n + 1)
    upper = i / ecdf.n - f
    lower = f - (i - 1) / ecdf.n
    return float(np.max(np.maximum(upper, lower)))


def ad_statistic(ecdf: EmpiricalCdf, dist: Distribution) -> float:
    """Order-statistic form of the Anderson-Darling statistic."""
    n = ecdf.n
    if hasattr(dist, "_cdf_sf"):
        f, s = dist._cdf_sf(ecdf.sorted_data)
    else:
        f = np.asarray(dist.cdf(ecdf.sorted_data), dtype=float)
        s = np.asarray(dist.sf(ecdf.sorted_data), dtype=float)
    f = np.clip(f, _AD_CLAMP, 1.0 - _AD_CLAMP)
    s = np.clip(s, _AD_CLAMP, 1.0 - _AD_CLAMP)
    i = np.arange(1, n + 1)
    total = np.sum((2.0 * i - 1.0) / n * (np.log(f) + np.log(s[::-1])))
    return float(-n - total)


def aic(loglik: float, k: int) -> float:
    if k < 1:
        raise DomainError("k must be >= 1")
    return 2.0 * k - 2.0 * loglik


def bic(loglik: float, k: int, n: int) -> float:
    if k < 1 or n < 1:
        raise DomainError("k and n must be >= 1")
    return k * math.log(n) - 2.0 * loglik


def chi_square_test(data, dist: Distribution, bins: int = 500,
                    estimated_params: int = 0) -> ChiSquareResult:
    """Pearson chi-square test with equal-probability bins under ``dist``.

    Bin edges are model quantiles at j/bins; adjacent bins are merged until
    every expected count reaches five.  Degrees of freedom are
    ``bins_used - 1 - estimated_params``.
    """
    x = check_returns(data, min_samples=1)
    if bins < 3:
        raise DomainError("bins must be >= 3")
    n = len(x)
    probs = np.arange(1, bins) / bins
    inner_edges = np.asarray(dist.ppf(probs), dtype=float)
    counts = np.diff(
        np.concatenate([[0], np.searchsorted(np.sort(x), inner_edges,
                                             side="right"), [n]])
    ).astype(float)
    # equal-probability bins: merge consecutive groups until E = n*g/bins >= 5
    group = max(1, math.ceil(5.0 * bins / n))
    merged_counts = []
    merged_mass = []
    start = 0
    while start < bins:
        stop = min(start + group, bins)
        merged_counts.append(counts[start:stop].sum())
        merged_mass.append((stop - start) / bins)
        start = stop
    if len(merged_counts) > 1 and merged_mass[-1] * n < 5.0:
        merged_counts[-2] += merged_counts[-1]
        merged_mass[-2] += merged_mass[-1]
        merged_counts.pop()
        merged_mass.pop()
    observed = np.asarray(merged_counts)
    expected = n * np.asarray(merged_mass)
    bins_used = len(observed)
    dof = bins_used - 1 - estimated_params
    if dof < 1:
        raise DomainError(
            f"chi-square has no degrees of freedom left "
            f"({bins_used} bins, {estimated_params} estimated parameters)"
        )
    statistic = float(np.sum((observed - expected) ** 2 / expected))
    p_value = float(_chi2.sf(statistic, dof))
    return ChiSquareResult(
        statistic=statistic,
        dof=dof,
        p_value=p_value,
        bins_used=bins_used,
        rejected_at_5pct=p_value < 0.05,
    )


def gof_report(data, fit: FitResult) -> GofReport:
    """Bundle the four criteria for a fit produced on this very sample."""
    x = check_returns(data, min_samples=1)
    if len(x) != fit.n:
        raise DataError(
            f"sample size {len(x)} does not match the fit's n = {fit.n}"
        )
    ecdf = EmpiricalCdf.from_sample(x)
    return GofReport(
        ks=ks_statistic(ecdf, fit.distribution),
        ad=ad_statistic(ecdf, fit.distribution),
        aic=aic(fit.loglik, fit.k),
        bic=bic(fit.loglik, fit.k, fit.n),
        loglik=fit.loglik,
        k=fit.k,
        n=fit.n,
    )
