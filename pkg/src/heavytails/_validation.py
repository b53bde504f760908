"""Input validation helpers shared by estimators and analysis routines."""

from __future__ import annotations

import numbers

import numpy as np

from .errors import DataError, DomainError


def check_returns(X, min_samples: int = 1, name: str = "X") -> np.ndarray:
    """Coerce a return sample to a finite 1-D float array.

    Accepts shape ``(n,)`` or a single-column ``(n, 1)`` so the estimators
    compose with column-vector conventions.
    """
    x = np.asarray(X, dtype=float)
    if x.ndim == 2 and x.shape[1] == 1:
        x = x[:, 0]
    if x.ndim != 1:
        raise DataError(f"{name} must be one-dimensional, got shape {x.shape}")
    if x.size < min_samples:
        raise DataError(
            f"{name} needs at least {min_samples} observations, got {x.size}"
        )
    if not np.all(np.isfinite(x)):
        raise DataError(f"{name} contains non-finite values")
    return x


def check_positive(value, name: str) -> float:
    if not isinstance(value, numbers.Real) or not np.isfinite(value) or value <= 0:
        raise DomainError(f"{name} must be a positive finite real, got {value!r}")
    return float(value)


def check_real(value, name: str) -> float:
    if not isinstance(value, numbers.Real) or not np.isfinite(value):
        raise DomainError(f"{name} must be a finite real, got {value!r}")
    return float(value)


def check_probability(value, name: str, *, open_interval: bool = False) -> float:
    v = check_real(value, name)
    if open_interval:
        if not 0.0 < v < 1.0:
            raise DomainError(f"{name} must lie strictly in (0, 1), got {v}")
    elif not 0.0 <= v <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {v}")
    return v


def as_generator(random_state) -> np.random.Generator:
    """Normalize ``None | int | Generator`` to a numpy Generator."""
    if isinstance(random_state, np.random.Generator):
        return random_state
    return np.random.default_rng(random_state)
