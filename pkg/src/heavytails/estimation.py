"""Maximum-likelihood fitters for every supported family.

Families split by algorithm:

* normal: closed form;
* Student's t: ECME, with the "either" step maximizing the actual
  log-likelihood over the degrees of freedom on a log-scale bracket;
* fixed-dof Student mixtures: EM with multi-start;
* GH / NIG / VG / Meixner: multi-start Nelder-Mead over an unconstrained
  reparameterization;
* Meixner additionally: damped Newton ascent with the analytic score,
  falling back to Nelder-Mead when an ascent step cannot be found.

All fits are deterministic given (data, config.seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import optimize
from scipy.special import digamma as _digamma, gammaln

from ._validation import check_returns
from .distributions import (
    CANONICAL_MIXTURE_DOFS,
    Distribution,
    GeneralizedHyperbolic,
    Meixner,
    Normal,
    NormalInverseGaussian,
    StudentT,
    StudentTMixture,
    VarianceGamma,
)
from .distributions.student import student_logpdf
from .errors import DomainError, EstimationError

__all__ = [
    "FitConfig",
    "FitResult",
    "fit",
    "fit_normal",
    "fit_student_ecme",
    "fit_student_mixture_em",
    "fit_nelder_mead",
    "fit_meixner_newton",
    "to_unconstrained",
    "from_unconstrained",
]

NU_LOWER = 0.5
NU_UPPER = 200.0

_NM_FAMILIES = ("GH", "NIG", "VG", "Meixner")


@dataclass(frozen=True)
class FitConfig:
    """Knobs shared by the iterative fitters.

    ``loglik_tolerance`` is an absolute stopping threshold on the
    log-likelihood gain; left unset it resolves to ``1e-8 * n``.
    ``max_iterations`` defaults to 2000 for EM/ECME and 5000 for
    Nelder-Mead.
    """

    max_iterations: Optional[int] = None
    loglik_tolerance: Optional[float] = None
    param_tolerance: float = 1e-8
    restarts: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.max_iterations is not None and self.max_iterations < 1:
            raise DomainError("max_iterations must be >= 1")
        if self.loglik_tolerance is not None and self.loglik_tolerance <= 0:
            raise DomainError("loglik_tolerance must be positive")
        if self.param_tolerance <= 0:
            raise DomainError("param_tolerance must be positive")
        if self.restarts < 1:
            raise DomainError("restarts must be >= 1")

    def tol(self, n: int) -> float:
        return self.loglik_tolerance if self.loglik_tolerance is not None else 1e-8 * n

    def iters(self, default: int) -> int:
        return self.max_iterations if self.max_iterations is not None else default


@dataclass
class FitResult:
    """Outcome of one maximum-likelihood fit."""

    distribution: Distribution
    loglik: float
    k: int
    n: int
    iterations: int
    converged: bool
    trace: Optional[list] = None
    flags: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        from .distributions import distribution_to_dict

        payload = distribution_to_dict(self.distribution)
        payload.update(
            loglik=self.loglik,
            k=self.k,
            n=self.n,
            iterations=self.iterations,
            converged=self.converged,
            flags=list(self.flags),
        )
        return payload


def _result(dist, data, iterations, converged, trace=None, flags=()) -> FitResult:
    return FitResult(
        distribution=dist,
        loglik=dist.loglikelihood(data),
        k=dist.k,
        n=len(data),
        iterations=iterations,
        converged=converged,
        trace=trace,
        flags=tuple(flags),
    )


def _robust_scale(x: np.ndarray) -> float:
    med = float(np.median(x))
    mad = float(np.median(np.abs(x - med)))
    scale = 1.4826 * mad
    if scale <= 0.0:
        scale = float(np.std(x))
    return scale


def _golden_max(f, lo: float, hi: float, iters: int = 36) -> float:
    """Deterministic golden-section maximizer on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return c if fc >= fd else d


# ---------------------------------------------------------------------------
# closed-form normal fit

def fit_normal(data) -> FitResult:
    """Exact ML estimate of the normal model (1/n variance denominator)."""
    x = check_returns(data, min_samples=2)
    mu = float(np.mean(x))
    sigma2 = float(np.mean((x - mu) ** 2))
    if sigma2 <= 0.0:
        raise EstimationError("normal fit requires non-degenerate data")
    dist = Normal(mu, math.sqrt(sigma2))
    return _result(dist, x, iterations=0, converged=True)


# ---------------------------------------------------------------------------
# Student's t via ECME

def fit_student_ecme(data, config: Optional[FitConfig] = None) -> FitResult:
    """Joint (nu, mu, sigma) estimation by ECME.

    The E-step weights are w_i = (nu+1) / (nu + ((x_i-mu)/sigma)^2); the
    CM-steps update (mu, sigma) by weighted moments and the "either" step
    maximizes the observed log-likelihood over nu in [0.5, 200] on a log
    scale.  The recorded trace is nondecreasing.
    """
    x = check_returns(data, min_samples=10)
    cfg = config or FitConfig()
    n = len(x)
    tol = cfg.tol(n)
    max_iter = cfg.iters(2000)

    mu = float(np.median(x))
    sigma = _robust_scale(x)
    if sigma <= 0.0:
        raise EstimationError("Student fit requires non-degenerate data")
    nu = 8.0

    def loglik(nu_, mu_, sigma_):
        return float(np.sum(student_logpdf(x, mu_, sigma_, nu_)))

    ll = loglik(nu, mu, sigma)
    trace = [ll]
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        z2 = ((x - mu) / sigma) ** 2
        w = (nu + 1.0) / (nu + z2)
        mu_new = float(np.sum(w * x) / np.sum(w))
        sigma2_new = float(np.sum(w * (x - mu_new) ** 2) / n)
        if sigma2_new <= 0.0:
            raise EstimationError("Student fit collapsed to zero scale")
        sigma_new = math.sqrt(sigma2_new)
        log_nu = _golden_max(
            lambda t: loglik(math.exp(t), mu_new, sigma_new),
            math.log(NU_LOWER), math.log(NU_UPPER),
        )
        nu_new = math.exp(log_nu)
        # never let the 1-D search move downhill
        if loglik(nu_new, mu_new, sigma_new) < loglik(nu, mu_new, sigma_new):
            nu_new = nu
        mu, sigma, nu = mu_new, sigma_new, nu_new
        ll_new = loglik(nu, mu, sigma)
        trace.append(ll_new)
        if ll_new - ll < tol:
            ll = ll_new
            converged = True
            break
        ll = ll_new

    flags = []
    if nu >= NU_UPPER * (1.0 - 1e-6):
        nu = NU_UPPER
        flags.append("nu_at_upper_bound")
    if nu <= 2.0:
        flags.append("nu_at_or_below_2")
    dist = StudentT(nu, mu, sigma)
    return _result(dist, x, iterations, converged, trace=trace, flags=flags)


# ---------------------------------------------------------------------------
# fixed-dof Student mixtures via EM

def _mixture_start(x, dofs, rng, restart_index):
    m = len(dofs)
    med = float(np.median(x))
    scale = _robust_scale(x)
    # widest start goes to the smallest dof: the heavy component owns the
    # tails, otherwise EM settles into a label-permuted local maximum
    factors = np.geomspace(2.0, 0.5, m) if m > 1 else np.array([1.0])
    if restart_index == 0:
        offsets = np.zeros(m)
        sigma_jitter = np.ones(m)
    else:
        offsets = rng.normal(0.0, 0.4, m)
        sigma_jitter = np.exp(rng.normal(0.0, 0.4, m))
    mus = med + offsets * scale
    sigmas = scale * factors * sigma_jitter
    p = np.full(m, 1.0 / m)
    return mus, sigmas, p


class _MixtureCollapse(Exception):
    """A component lost all mass or fell below the scale floor."""


def _mixture_loglik(x, nus, consts, mus, sigmas, p) -> float:
    z2 = ((x[:, None] - mus[None, :]) / sigmas[None, :]) ** 2
    comp = (consts - np.log(sigmas))[None, :] - 0.5 * (nus + 1.0)[None, :] * (
        np.log1p(z2 / nus[None, :])
    )
    with np.errstate(divide="ignore"):
        lw = comp + np.log(p)[None, :]
    mx = lw.max(axis=1)
    return float((mx + np.log(np.exp(lw - mx[:, None]).sum(axis=1))).sum())


def _em_update(x, nus, consts, sigma_floor, mus, sigmas, p):
    """One EM cycle; returns (loglik at input parameters, updated params)."""
    n = len(x)
    d = x[:, None] - mus[None, :]
    z2 = (d / sigmas[None, :]) ** 2
    comp = (consts - np.log(sigmas))[None, :] - 0.5 * (nus + 1.0)[None, :] * (
        np.log1p(z2 / nus[None, :])
    )
    with np.errstate(divide="ignore"):
        lw = comp + np.log(p)[None, :]
    mx = lw.max(axis=1)
    norm = mx + np.log(np.exp(lw - mx[:, None]).sum(axis=1))
    ll = float(norm.sum())
    if not math.isfinite(ll):
        raise _MixtureCollapse
    tau = np.exp(lw - norm[:, None])
    u = (nus[None, :] + 1.0) / (nus[None, :] + z2)
    tw = tau * u
    tau_tot = tau.sum(axis=0)
    tw_tot = tw.sum(axis=0)
    if np.any(tau_tot <= n * 1e-12) or np.any(tw_tot <= 0.0):
        raise _MixtureCollapse
    p_new = tau_tot / n
    mus_new = (tw * x[:, None]).sum(axis=0) / tw_tot
    sigma2 = (tw * (x[:, None] - mus_new[None, :]) ** 2).sum(axis=0) / tau_tot
    if np.any(~np.isfinite(sigma2)) or np.any(np.sqrt(sigma2) < sigma_floor):
        raise _MixtureCollapse
    return ll, (mus_new, np.sqrt(sigma2), p_new)


def _pack(theta) -> np.ndarray:
    mus, sigmas, p = theta
    return np.concatenate([mus, np.log(sigmas), np.log(p)])


def _unpack(vec: np.ndarray, m: int):
    mus = vec[:m]
    sigmas = np.exp(vec[m:2 * m])
    q = np.exp(vec[2 * m:])
    total = q.sum()
    if not np.all(np.isfinite(sigmas)) or not math.isfinite(total) or total <= 0:
        raise _MixtureCollapse
    return mus, sigmas, q / total


def fit_student_mixture_em(data, dofs: Sequence[float],
                           config: Optional[FitConfig] = None) -> FitResult:
    """EM for a Student mixture with the dofs held fixed.

    Estimates (mu_j, sigma_j, p_j); multi-start with the best final
    log-likelihood winning (ties: fewest iterations, then lowest restart
    index).  Plain EM steps are interleaved with a squared-extrapolation
    accelerator whose candidate is only accepted when it does not lower
    the observed log-likelihood, so the recorded trace stays
    nondecreasing.  A component collapsing below the scale floor triggers
    a restart; if every restart collapses an EstimationError is raised.
    """
    x = check_returns(data, min_samples=50)
    dofs = tuple(sorted(float(v) for v in dofs))
    if len(dofs) < 1 or any(v <= 0 for v in dofs):
        raise DomainError("dofs must be a nonempty list of positive reals")
    cfg = config or FitConfig()
    n = len(x)
    m = len(dofs)
    tol = cfg.tol(n)
    max_iter = cfg.iters(2000)
    rng = np.random.default_rng(cfg.seed)
    sigma_floor = 1e-6 * float(np.std(x))
    if sigma_floor <= 0.0:
        raise EstimationError("mixture fit requires non-degenerate data")
    nus = np.asarray(dofs)
    consts = (
        gammaln(0.5 * (nus + 1.0)) - gammaln(0.5 * nus)
        - 0.5 * np.log(np.pi * nus)
    )

    def loglik(theta):
        return _mixture_loglik(x, nus, consts, *theta)

    def em(theta):
        return _em_update(x, nus, consts, sigma_floor, *theta)[1]

    candidates = []
    for r in range(cfg.restarts):
        theta = _mixture_start(x, dofs, rng, r)
        try:
            ll = loglik(theta)
            trace = [ll]
            converged = False
            iterations = 0
            while iterations < max_iter:
                t1 = em(theta)
                t2 = em(t1)
                iterations += 2
                accepted = t2
                ll_acc = loglik(t2)
                # squared-extrapolation candidate (Varadhan-Roland scheme);
                # accepted only if it keeps the log-likelihood nondecreasing
                v0, v1, v2 = _pack(theta), _pack(t1), _pack(t2)
                rvec = v1 - v0
                vvec = v2 - v1 - rvec
                vv = float(vvec @ vvec)
                if vv > 0.0:
                    alpha = -math.sqrt(float(rvec @ rvec) / vv)
                    cand_vec = v0 - 2.0 * alpha * rvec + alpha * alpha * vvec
                    try:
                        cand = em(_unpack(cand_vec, m))
                        iterations += 1
                        ll_cand = loglik(cand)
                        if math.isfinite(ll_cand) and ll_cand >= ll_acc:
                            accepted, ll_acc = cand, ll_cand
                    except _MixtureCollapse:
                        pass
                if ll_acc < ll - 1e-8:
                    raise _MixtureCollapse  # numerically broken cycle
                theta = accepted
                trace.append(ll_acc)
                gain = ll_acc - ll
                ll = ll_acc
                if gain < tol:
                    converged = True
                    break
        except _MixtureCollapse:
            continue
        candidates.append((ll, -iterations, -r, theta, trace, converged))

    if not candidates:
        raise EstimationError("all mixture restarts collapsed")
    ll, neg_iters, neg_r, theta, trace, converged = max(candidates)
    mus, sigmas, p = theta
    dist = StudentTMixture(
        [(float(mus[j]), float(sigmas[j]), float(nus[j])) for j in range(m)],
        weights=p[:-1],
    )
    return _result(dist, x, -neg_iters, converged, trace=trace)


# ---------------------------------------------------------------------------
# unconstrained reparameterizations for the simplex / Newton fitters

def to_unconstrained(family: str, dist: Distribution) -> np.ndarray:
    """Map natural parameters to the unconstrained optimization space."""
    if family == "NIG":
        return np.array([
            math.log(dist.alpha - abs(dist.beta)), dist.beta,
            math.log(dist.delta), dist.mu,
        ])
    if family == "GH":
        return np.array([
            dist.lam, math.log(dist.alpha - abs(dist.beta)), dist.beta,
            math.log(dist.delta), dist.mu,
        ])
    if family == "VG":
        return np.array([
            math.log(dist.lam), math.log(dist.alpha - abs(dist.beta)),
            dist.beta, dist.mu,
        ])
    if family == "Meixner":
        return np.array([
            math.log(dist.alpha), math.tan(0.5 * dist.beta), dist.mu,
            math.log(dist.delta),
        ])
    raise DomainError(f"no reparameterization for family {family!r}")


def from_unconstrained(family: str, u: np.ndarray) -> Distribution:
    """Inverse of :func:`to_unconstrained`."""
    u = np.asarray(u, dtype=float)
    if family == "NIG":
        s, beta, logd, mu = u
        return NormalInverseGaussian(abs(beta) + math.exp(s), beta,
                                     math.exp(logd), mu)
    if family == "GH":
        lam, s, beta, logd, mu = u
        return GeneralizedHyperbolic(lam, abs(beta) + math.exp(s), beta,
                                     math.exp(logd), mu)
    if family == "VG":
        loglam, s, beta, mu = u
        return VarianceGamma(math.exp(loglam), abs(beta) + math.exp(s), beta, mu)
    if family == "Meixner":
        loga, b, mu, logd = u
        return Meixner(math.exp(loga), 2.0 * math.atan(b), mu, math.exp(logd))
    raise DomainError(f"no reparameterization for family {family!r}")


def _moment_start(family: str, x: np.ndarray) -> Distribution:
    mean = float(np.mean(x))
    var = float(np.var(x))
    m2 = var
    m4 = float(np.mean((x - mean) ** 4))
    kurt = m4 / m2**2 if m2 > 0 else 3.0
    exk = max(kurt - 3.0, 0.05)
    if family in ("NIG", "GH"):
        alpha = math.sqrt(3.0 / (exk * var))
        delta = var * alpha
        if family == "NIG":
            return NormalInverseGaussian(alpha, 0.0, delta, mean)
        return GeneralizedHyperbolic(-0.5, alpha, 0.0, delta, mean)
    if family == "VG":
        lam = 3.0 / exk
        alpha = math.sqrt(2.0 * lam / var)
        return VarianceGamma(lam, alpha, 0.0, mean)
    if family == "Meixner":
        delta = 1.0 / exk
        alpha = math.sqrt(2.0 * var / delta)
        return Meixner(alpha, 0.0, mean, delta)
    raise DomainError(f"no moment start for family {family!r}")


def _jitter_scales(family: str, u0: np.ndarray, data_scale: float) -> np.ndarray:
    if family == "NIG":
        return np.array([0.6, 0.3 * math.exp(u0[0]), 0.6, 0.5 * data_scale])
    if family == "GH":
        return np.array([0.75, 0.6, 0.3 * math.exp(u0[1]), 0.6, 0.5 * data_scale])
    if family == "VG":
        return np.array([0.6, 0.6, 0.3 * math.exp(u0[1]), 0.5 * data_scale])
    if family == "Meixner":
        return np.array([0.6, 0.5, 0.5 * data_scale, 0.6])
    raise DomainError(f"no jitter scales for family {family!r}")


def _neg_loglik_factory(family: str, x: np.ndarray):
    def neg(u):
        try:
            dist = from_unconstrained(family, u)
            ll = dist.loglikelihood(x)
        except (DomainError, OverflowError, FloatingPointError, ValueError):
            return 1e300
        if not math.isfinite(ll):
            return 1e300
        return -ll

    return neg


def fit_nelder_mead(family: str, data,
                    config: Optional[FitConfig] = None) -> FitResult:
    """Multi-start Nelder-Mead ML fit for GH, NIG, VG or Meixner."""
    if family not in _NM_FAMILIES:
        raise DomainError(f"fit_nelder_mead does not handle family {family!r}")
    x = check_returns(data, min_samples=50)
    cfg = config or FitConfig()
    n = len(x)
    rng = np.random.default_rng(cfg.seed)
    neg = _neg_loglik_factory(family, x)
    u0 = to_unconstrained(family, _moment_start(family, x))
    scales = _jitter_scales(family, u0, float(np.std(x)))
    max_iter = cfg.iters(5000)

    candidates = []
    for r in range(cfg.restarts):
        u_start = u0 if r == 0 else u0 + rng.normal(0.0, 1.0, len(u0)) * scales
        if not math.isfinite(-neg(u_start)):
            continue
        res = optimize.minimize(
            neg, u_start, method="Nelder-Mead",
            options={
                "maxiter": max_iter,
                "maxfev": int(max_iter * 1.5),
                "xatol": cfg.param_tolerance,
                "fatol": cfg.tol(n),
            },
        )
        if not math.isfinite(res.fun) or res.fun >= 1e300:
            continue
        candidates.append((-res.fun, -int(res.nit), -r, res.x, bool(res.success)))

    if not candidates:
        raise EstimationError(f"all {family} starts failed to produce a fit")
    ll, neg_iters, neg_r, u_best, converged = max(candidates)
    dist = from_unconstrained(family, u_best)
    return _result(dist, x, -neg_iters, converged)


# ---------------------------------------------------------------------------
# Meixner via damped Newton with the analytic score

def meixner_score(dist: Meixner, x: np.ndarray) -> np.ndarray:
    """Gradient of the log-likelihood in natural (alpha, beta, mu, delta)."""
    a, b, mu, d = dist.alpha, dist.beta, dist.mu, dist.delta
    y = (x - mu) / a
    psi = _digamma(d + 1j * y)
    re, im = np.real(psi), np.imag(psi)
    g_alpha = np.sum(-1.0 / a - b * y / a + (2.0 * y / a) * im)
    g_beta = np.sum(-d * math.tan(0.5 * b) + y)
    g_mu = np.sum(-b / a + (2.0 / a) * im)
    g_delta = np.sum(
        2.0 * math.log(2.0 * math.cos(0.5 * b))
        - 2.0 * _digamma(2.0 * d)
        + 2.0 * re
    )
    return np.array([g_alpha, g_beta, g_mu, g_delta])


def _meixner_grad_u(u: np.ndarray, x: np.ndarray) -> np.ndarray:
    dist = from_unconstrained("Meixner", u)
    g = meixner_score(dist, x)
    jac = np.array([dist.alpha, 2.0 / (1.0 + u[1] ** 2), 1.0, dist.delta])
    return np.array([g[0] * jac[0], g[1] * jac[1], g[2] * jac[2], g[3] * jac[3]])


def fit_meixner_newton(data, config: Optional[FitConfig] = None) -> FitResult:
    """Damped Newton ascent on the Meixner log-likelihood.

    The gradient is analytic (complex digamma based); the Hessian comes
    from central differences of the gradient.  Any iteration that cannot
    produce an ascent step falls back to the Nelder-Mead fitter.
    """
    x = check_returns(data, min_samples=50)
    cfg = config or FitConfig()
    n = len(x)
    tol = cfg.tol(n)
    max_iter = cfg.iters(200)
    neg = _neg_loglik_factory("Meixner", x)

    def ll_of(u):
        return -neg(u)

    u = to_unconstrained("Meixner", _moment_start("Meixner", x))
    ll = ll_of(u)
    if not math.isfinite(ll):
        return _fallback_to_nm(x, cfg)
    trace = [ll]
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        g = _meixner_grad_u(u, x)
        h = 1e-5 * (1.0 + np.abs(u))
        H = np.empty((4, 4))
        for j in range(4):
            up, um = u.copy(), u.copy()
            up[j] += h[j]
            um[j] -= h[j]
            H[:, j] = (_meixner_grad_u(up, x) - _meixner_grad_u(um, x)) / (2.0 * h[j])
        H = 0.5 * (H + H.T)
        A = -H
        tau = 0.0
        step = None
        for _ in range(12):
            try:
                L = np.linalg.cholesky(A + tau * np.eye(4))
                step = np.linalg.solve(A + tau * np.eye(4), g)
                del L
                break
            except np.linalg.LinAlgError:
                tau = max(2.0 * tau, 1e-6 * (1.0 + np.trace(np.abs(A))))
        if step is None or not np.all(np.isfinite(step)):
            step = g / max(np.linalg.norm(g), 1.0)
        t = 1.0
        improved = False
        gs = float(g @ step)
        if gs <= 0.0:
            step = g / max(np.linalg.norm(g), 1.0)
            gs = float(g @ step)
        for _ in range(40):
            ll_try = ll_of(u + t * step)
            if math.isfinite(ll_try) and ll_try >= ll + 1e-4 * t * gs:
                u = u + t * step
                improved = True
                break
            t *= 0.5
        if not improved:
            # cannot ascend from here: try a plain gradient step, then bail
            for _ in range(40):
                ll_try = ll_of(u + t * g)
                if math.isfinite(ll_try) and ll_try > ll:
                    u = u + t * g
                    improved = True
                    break
                t *= 0.5
            if not improved:
                if ll - trace[0] > 0 and float(np.max(np.abs(g))) < 1e-6 * n:
                    converged = True
                    break
                return _fallback_to_nm(x, cfg)
        ll_new = ll_of(u)
        trace.append(ll_new)
        if ll_new - ll < tol:
            converged = True
            ll = ll_new
            break
        ll = ll_new

    dist = from_unconstrained("Meixner", u)
    return _result(dist, x, iterations, converged, trace=trace)


def _fallback_to_nm(x, cfg) -> FitResult:
    res = fit_nelder_mead("Meixner", x, cfg)
    res.flags = tuple(list(res.flags) + ["newton_fallback_nelder_mead"])
    return res


# ---------------------------------------------------------------------------
# dispatcher

def fit(family: str, data, config: Optional[FitConfig] = None,
        dofs: Optional[Sequence[float]] = None) -> FitResult:
    """Fit any supported family; canonical mixtures carry their fixed dofs."""
    if family == "N":
        return fit_normal(data)
    if family == "St":
        return fit_student_ecme(data, config)
    if family in ("GH", "NIG", "VG"):
        return fit_nelder_mead(family, data, config)
    if family == "Meixner":
        return fit_meixner_newton(data, config)
    if family in CANONICAL_MIXTURE_DOFS:
        return fit_student_mixture_em(data, CANONICAL_MIXTURE_DOFS[family], config)
    if family == "mSt":
        if dofs is None:
            raise DomainError("family 'mSt' requires an explicit dofs list")
        return fit_student_mixture_em(data, dofs, config)
    raise DomainError(f"unknown family tag {family!r}")
