"""Special functions backing the density layer.

All functions are vectorized over numpy arrays and accept scalars.  The
heavy lifting is delegated to scipy.special; this module adds the domain
checking, the log-scale Bessel variant that stays finite where ``K_nu``
over- or underflows in double precision, and the complex-gamma modulus
needed by the Meixner density.
"""

from __future__ import annotations

import numpy as np
from scipy import special as _sp

from .errors import DomainError

__all__ = [
    "log_gamma",
    "digamma",
    "log_abs_gamma_complex",
    "bessel_k",
    "log_bessel_k",
    "regularized_incomplete_beta",
]


def _as_float_array(x) -> np.ndarray:
    return np.asarray(x, dtype=float)


def _scalar_or_array(out: np.ndarray, *inputs):
    if all(np.isscalar(v) or np.ndim(v) == 0 for v in inputs):
        return float(out[()] if out.ndim == 0 else out)
    return out


def log_gamma(x):
    """Natural log of the gamma function for positive real arguments."""
    xs = _as_float_array(x)
    if np.any(~(xs > 0.0)):
        raise DomainError("log_gamma requires x > 0")
    return _scalar_or_array(_sp.gammaln(xs), x)


def digamma(x):
    """Digamma function; accepts real (x > 0) or complex (Re > 0) input."""
    xs = np.asarray(x)
    if np.iscomplexobj(xs):
        if np.any(~(xs.real > 0.0)):
            raise DomainError("digamma requires Re(x) > 0")
        out = _sp.digamma(xs)
        if np.isscalar(x) or np.ndim(x) == 0:
            return complex(out)
        return out
    xs = _as_float_array(xs)
    if np.any(~(xs > 0.0)):
        raise DomainError("digamma requires x > 0")
    return _scalar_or_array(_sp.digamma(xs), x)


def log_abs_gamma_complex(re, im):
    """ln |Gamma(re + i*im)| for re > 0.

    The modulus of the complex gamma function enters the Meixner density;
    everything is carried in log scale because |Gamma| underflows already
    for moderate imaginary parts.
    """
    res = _as_float_array(re)
    ims = _as_float_array(im)
    if np.any(~(res > 0.0)):
        raise DomainError("log_abs_gamma_complex requires re > 0")
    z = res + 1j * ims
    return _scalar_or_array(np.real(_sp.loggamma(z)), re, im)


# Modified Bessel function of the second kind.
#
# scipy's kv/kve cover almost the whole (nu, x) plane we need, but
# kve overflows for large order with small argument (K_nu itself is
# ~ Gamma(nu) (2/x)^nu / 2 there, far beyond 1e308).  In that corner the
# ascending series truncates after a handful of terms, so we evaluate the
# log directly from it.

_SERIES_TERMS = 12


def _log_bessel_k_small_x_series(nu: np.ndarray, x: np.ndarray) -> np.ndarray:
    # K_nu(x) = (1/2) Gamma(nu) (2/x)^nu * sum_k (x^2/4)^k / (k! (1-nu)_k),
    # valid for non-integer nu; the correction from the I_nu branch is
    # O((x/2)^(2 nu) / Gamma(nu)^2) and vanishes at double precision in the
    # regime where this path is taken (nu >~ 40, x << 1).
    q = 0.25 * x * x
    total = np.ones_like(q)
    term = np.ones_like(q)
    for k in range(1, _SERIES_TERMS + 1):
        term = term * q / (k * (k - nu))
        total = total + term
    return np.log(0.5) + _sp.gammaln(nu) + nu * np.log(2.0 / x) + np.log(total)


def log_bessel_k(nu, x):
    """ln K_nu(x) for x > 0, finite wherever the log itself is representable."""
    nus = np.abs(_as_float_array(nu))
    xs = _as_float_array(x)
    if np.any(~(xs > 0.0)):
        raise DomainError("log_bessel_k requires x > 0")
    nus_b, xs_b = np.broadcast_arrays(nus, xs)
    with np.errstate(over="ignore"):
        kve = _sp.kve(nus_b, xs_b)
    out = np.log(kve) - xs_b
    bad = ~np.isfinite(kve)
    if np.any(bad):
        out = np.where(
            bad, _log_bessel_k_small_x_series(nus_b, xs_b), out
        )
    return _scalar_or_array(out, nu, x)


def bessel_k(nu, x):
    """Modified Bessel function of the second kind, K_nu(x), for x > 0."""
    nus = np.abs(_as_float_array(nu))
    xs = _as_float_array(x)
    if np.any(~(xs > 0.0)):
        raise DomainError("bessel_k requires x > 0")
    nus_b, xs_b = np.broadcast_arrays(nus, xs)
    with np.errstate(over="ignore", under="ignore"):
        out = _sp.kv(nus_b, xs_b)
        # kv under/overflows before the log does; recover those entries.
        bad = ~np.isfinite(out) | (out <= 0.0)
        if np.any(bad):
            logs = np.asarray(log_bessel_k(nus_b, xs_b))
            out = np.where(bad, np.exp(logs), out)
    return _scalar_or_array(out, nu, x)


def regularized_incomplete_beta(a, b, x):
    """Regularized incomplete beta function I_x(a, b)."""
    as_ = _as_float_array(a)
    bs = _as_float_array(b)
    xs = _as_float_array(x)
    if np.any(~(as_ > 0.0)) or np.any(~(bs > 0.0)):
        raise DomainError("regularized_incomplete_beta requires a > 0 and b > 0")
    if np.any(xs < 0.0) or np.any(xs > 1.0):
        raise DomainError("regularized_incomplete_beta requires 0 <= x <= 1")
    return _scalar_or_array(_sp.betainc(as_, bs, xs), a, b, x)
