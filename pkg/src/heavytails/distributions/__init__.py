"""Distribution layer: densities, CDFs, quantiles and samplers per family."""

from __future__ import annotations

from ..errors import DomainError
from .base import Distribution
from .gh_family import GeneralizedHyperbolic, NormalInverseGaussian, VarianceGamma
from .meixner import Meixner
from .mixture import StudentTMixture, mixture_family_tag
from .normal import Normal
from .relations import gh_normal_limit, gh_student_limit, gh_vg_limit, nig_as_gh
from .student import StudentT

# canonical comparison order; also the tie-break order for model selection
FAMILY_ORDER = ["N", "St", "NIG", "VG", "GH", "Meixner", "2St12", "2St39", "3St"]

CANONICAL_MIXTURE_DOFS = {
    "2St12": (4.0, 12.0),
    "2St39": (4.0, 39.0),
    "3St": (4.0, 12.0, 39.0),
}

_SCALAR_FAMILIES = {
    "N": (Normal, ("mu", "sigma")),
    "St": (StudentT, ("nu", "mu", "sigma")),
    "NIG": (NormalInverseGaussian, ("alpha", "beta", "delta", "mu")),
    "VG": (VarianceGamma, ("lam", "alpha", "beta", "mu")),
    "GH": (GeneralizedHyperbolic, ("lam", "alpha", "beta", "delta", "mu")),
    "Meixner": (Meixner, ("alpha", "beta", "mu", "delta")),
}


def make_distribution(family: str, params: dict) -> Distribution:
    """Build a distribution from a family tag and natural-scale parameters."""
    if family in _SCALAR_FAMILIES:
        cls, names = _SCALAR_FAMILIES[family]
        missing = [n for n in names if n not in params]
        if missing:
            raise DomainError(f"family {family} missing parameters {missing}")
        return cls(**{n: float(params[n]) for n in names})
    if family in CANONICAL_MIXTURE_DOFS or family == "mSt":
        comps = [
            (float(c["mu"]), float(c["sigma"]), float(c["nu"]))
            for c in params["components"]
        ]
        dist = StudentTMixture(comps, params.get("weights", ()))
        if family != "mSt":
            expected = CANONICAL_MIXTURE_DOFS[family]
            if dist.dofs != expected:
                raise DomainError(
                    f"family {family} requires fixed dofs {expected}, "
                    f"got {dist.dofs}"
                )
        return dist
    raise DomainError(f"unknown family tag {family!r}")


def distribution_to_dict(dist: Distribution) -> dict:
    return {"family": dist.family, "params": dist.params()}


def distribution_from_dict(payload: dict) -> Distribution:
    if "family" not in payload or "params" not in payload:
        raise DomainError("distribution payload needs 'family' and 'params'")
    return make_distribution(payload["family"], payload["params"])


__all__ = [
    "Distribution",
    "Normal",
    "StudentT",
    "StudentTMixture",
    "GeneralizedHyperbolic",
    "NormalInverseGaussian",
    "VarianceGamma",
    "Meixner",
    "FAMILY_ORDER",
    "CANONICAL_MIXTURE_DOFS",
    "make_distribution",
    "distribution_to_dict",
    "distribution_from_dict",
    "mixture_family_tag",
    "nig_as_gh",
    "gh_student_limit",
    "gh_vg_limit",
    "gh_normal_limit",
]
