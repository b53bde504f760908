"""Diagnostics for the fitted three-component Student mixture and the
model-comparison summary tables.

The residue analysis bins the sample on an equal-width grid, compares
empirical and model bin frequencies for the full mixture and its ablated
variants (dropping the nu=4 and the nu=4,12 components without
re-estimating the rest), and rescales the differences through
arctan(res/a)/pi with a = max|res of the most ablated variant|/40 so the
structure of the small residues stays visible.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ._validation import check_returns
from .distributions import FAMILY_ORDER, Distribution, StudentTMixture
from .errors import DataError, DomainError
from .estimation import FitConfig, FitResult, fit
from .gof import GofReport, gof_report

__all__ = [
    "PosteriorTrace",
    "ResidueAnalysis",
    "QqData",
    "ComparisonCell",
    "ComparisonTable",
    "DescriptiveStats",
    "RESIDUE_VARIANTS",
    "posterior_probabilities",
    "ablate_mixture",
    "residue_analysis",
    "qq_data",
    "compare_models",
    "descriptive_stats",
]

CRITERIA = ("ks", "ad", "aic", "bic")
RESIDUE_VARIANTS = ("3St", "3Stm4", "3Stm4m12")


@dataclass(frozen=True)
class PosteriorTrace:
    """Per-point posterior component probabilities of a mixture."""

    x: np.ndarray
    tau: np.ndarray  # shape (n, m), rows sum to 1


@dataclass(frozen=True)
class ResidueAnalysis:
    bin_edges: np.ndarray
    empirical_freq: np.ndarray
    model_freq: dict
    res: dict
    a: float
    rescaled: dict


@dataclass(frozen=True)
class QqData:
    probs: np.ndarray
    empirical_q: np.ndarray
    model_q: np.ndarray


@dataclass(frozen=True)
class DescriptiveStats:
    n: int
    mean: float
    sd: float
    skewness: float
    kurtosis: float
    min: float
    max: float

    def to_row(self) -> list:
        return [self.n, self.mean, self.sd, self.skewness, self.kurtosis,
                self.min, self.max]


def posterior_probabilities(dist: StudentTMixture, xs) -> PosteriorTrace:
    """Posterior probabilities tau_j(x) of a three-component mixture."""
    if not isinstance(dist, StudentTMixture) or dist.m != 3:
        raise DomainError("posterior_probabilities needs a 3-component mixture")
    x = np.atleast_1d(np.asarray(xs, dtype=float))
    return PosteriorTrace(x=x, tau=dist.posterior(x))


def ablate_mixture(dist: StudentTMixture, drop) -> StudentTMixture:
    """Remove components by dof and renormalize the remaining weights.

    Retained component parameters are untouched (no re-estimation).
    """
    if not isinstance(dist, StudentTMixture) or dist.m != 3:
        raise DomainError("ablate_mixture needs a 3-component mixture")
    drop = {float(v) for v in drop}
    if not drop <= {4.0, 12.0}:
        raise DomainError("only the nu=4 and nu=12 components may be dropped")
    keep = [j for j, nu in enumerate(dist.dofs) if nu not in drop]
    w = dist.full_weights
    remaining = float(w[keep].sum())
    if remaining <= 0.0:
        raise DomainError("ablation would drop all mixture mass")
    comps = [dist.components[j] for j in keep]
    new_w = w[keep] / remaining
    return StudentTMixture(comps, weights=new_w[:-1])


def residue_analysis(data, dist: StudentTMixture, bins: int = 500) -> ResidueAnalysis:
    """Empirical-minus-model bin frequencies for 3St, 3Stm4 and 3Stm4m12."""
    x = check_returns(data, min_samples=2)
    if bins < 10:
        raise DomainError("bins must be >= 10")
    lo, hi = float(np.min(x)), float(np.max(x))
    if not lo < hi:
        raise DomainError("degenerate sample range")
    edges = np.linspace(lo, hi, bins + 1)
    counts, _ = np.histogram(x, bins=edges)
    empirical = counts / len(x)

    variants = {
        "3St": dist,
        "3Stm4": ablate_mixture(dist, {4}),
        "3Stm4m12": ablate_mixture(dist, {4, 12}),
    }
    model_freq = {}
    res = {}
    for name, d in variants.items():
        cdf_edges = np.asarray(d.cdf(edges), dtype=float)
        model_freq[name] = np.diff(cdf_edges)
        res[name] = empirical - model_freq[name]

    a = float(np.max(np.abs(res["3Stm4m12"]))) / 40.0
    rescaled = {}
    for name in RESIDUE_VARIANTS:
        if a > 0.0:
            rescaled[name] = np.arctan(res[name] / a) / math.pi
        else:  # perfect-fit limit
            rescaled[name] = np.sign(res[name]) * 0.5 * (res[name] != 0.0)
    return ResidueAnalysis(
        bin_edges=edges,
        empirical_freq=empirical,
        model_freq=model_freq,
        res=res,
        a=a,
        rescaled=rescaled,
    )


def qq_data(data, dist: Distribution) -> QqData:
    """Quantile pairs at plotting positions (i - 1/2)/n."""
    x = np.sort(check_returns(data, min_samples=2))
    n = len(x)
    probs = (np.arange(1, n + 1) - 0.5) / n
    return QqData(probs=probs, empirical_q=x,
                  model_q=np.asarray(dist.ppf(probs), dtype=float))


@dataclass(frozen=True)
class ComparisonCell:
    family: str
    report: Optional[GofReport] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.report is not None


@dataclass(frozen=True)
class ComparisonTable:
    """Per-(series, family) reports with per-criterion winners and tallies."""

    labels: list
    families: list
    rows: list  # list of dict family -> ComparisonCell
    winners: list  # list of dict criterion -> family
    tally: dict = field(default_factory=dict)  # criterion -> family -> count


def _fit_cell(args):
    label, family, data, config = args
    try:
        result = fit(family, data, config)
        return label, family, gof_report(data, result), None
    except Exception as exc:  # noqa: BLE001 - cell errors are recorded inline
        return label, family, None, f"{type(exc).__name__}: {exc}"


def _ordered_families(families: Sequence[str]) -> list:
    order = {f: i for i, f in enumerate(FAMILY_ORDER)}
    return sorted(families, key=lambda f: order.get(f, len(order)))


def compare_models(series_set, families: Sequence[str],
                   config: Optional[FitConfig] = None,
                   jobs: int = 1) -> ComparisonTable:
    """Fit every family to every series and tally the per-criterion winners.

    ``series_set`` is a sequence of (label, returns) pairs or ReturnSeries
    objects.  Cell failures are recorded inline and excluded from winner
    selection; ties break by the canonical family order.
    """
    if not series_set or not families:
        raise DataError("compare_models needs at least one series and one family")
    families = _ordered_families(list(dict.fromkeys(families)))
    cfg = config or FitConfig()

    pairs = []
    for item in series_set:
        if hasattr(item, "returns") and hasattr(item, "label"):
            pairs.append((item.label, np.asarray(item.returns, dtype=float)))
        else:
            label, values = item
            pairs.append((label, np.asarray(values, dtype=float)))

    tasks = [(label, fam, data, cfg) for label, data in pairs for fam in families]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_fit_cell, tasks))
    else:
        outcomes = [_fit_cell(t) for t in tasks]
    by_key = {(label, fam): (rep, err) for label, fam, rep, err in outcomes}

    rows = []
    winners = []
    tally = {c: {f: 0 for f in families} for c in CRITERIA}
    for label, _ in pairs:
        row = {}
        for fam in families:
            rep, err = by_key[(label, fam)]
            row[fam] = ComparisonCell(family=fam, report=rep, error=err)
        rows.append(row)
        row_winners = {}
        for crit in CRITERIA:
            best = None
            for fam in families:  # canonical order breaks ties deterministically
                cell = row[fam]
                if not cell.ok:
                    continue
                value = getattr(cell.report, crit)
                if best is None or value < best[0]:
                    best = (value, fam)
            if best is not None:
                row_winners[crit] = best[1]
                tally[crit][best[1]] += 1
        winners.append(row_winners)

    return ComparisonTable(
        labels=[label for label, _ in pairs],
        families=families,
        rows=rows,
        winners=winners,
        tally=tally,
    )


def descriptive_stats(data) -> DescriptiveStats:
    """Sample summary: n, mean, sd (n-1), raw skewness/kurtosis, min, max.

    Skewness and kurtosis use 1/n central moments (kurtosis is raw, so the
    normal reference value is 3); degenerate samples report them as NaN.
    """
    x = check_returns(data, min_samples=2)
    n = len(x)
    mean = float(np.mean(x))
    centered = x - mean
    m2 = float(np.mean(centered**2))
    sd = float(np.std(x, ddof=1))
    if m2 > 0.0:
        skew = float(np.mean(centered**3) / m2**1.5)
        kurt = float(np.mean(centered**4) / m2**2)
    else:
        skew = float("nan")
        kurt = float("nan")
    return DescriptiveStats(
        n=n, mean=mean, sd=sd, skewness=skew, kurtosis=kurt,
        min=float(np.min(x)), max=float(np.max(x)),
    )
