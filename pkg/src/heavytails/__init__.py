"""heavytails: ML fitting and comparison of heavy-tailed return models.

The package fits nine families (normal, Student's t, NIG, variance gamma,
generalized hyperbolic, Meixner, and Student mixtures with fixed dofs
2St12 / 2St39 / 3St) to log-return samples, compares them with KS / AD /
AIC / BIC, and produces mixture diagnostics: posterior component
probabilities, rescaled bin residues and chi-square ablation tests.
"""

from .analysis import (
    DescriptiveStats,
    PosteriorTrace,
    QqData,
    ResidueAnalysis,
    ablate_mixture,
    compare_models,
    descriptive_stats,
    posterior_probabilities,
    qq_data,
    residue_analysis,
)
from .distributions import (
    FAMILY_ORDER,
    GeneralizedHyperbolic,
    Meixner,
    Normal,
    NormalInverseGaussian,
    StudentT,
    StudentTMixture,
    VarianceGamma,
    distribution_from_dict,
    distribution_to_dict,
    make_distribution,
)
from .errors import DataError, DomainError, EstimationError, HeavyTailsError
from .estimation import (
    FitConfig,
    FitResult,
    fit,
    fit_meixner_newton,
    fit_nelder_mead,
    fit_normal,
    fit_student_ecme,
    fit_student_mixture_em,
)
from .estimators import (
    GeneralizedHyperbolicFitter,
    MeixnerFitter,
    NormalFitter,
    NormalInverseGaussianFitter,
    StudentMixtureFitter,
    StudentTFitter,
    VarianceGammaFitter,
)
from .gof import (
    ChiSquareResult,
    EmpiricalCdf,
    GofReport,
    ad_statistic,
    aic,
    bic,
    chi_square_test,
    gof_report,
    ks_statistic,
)
from .ingestion import (
    ColumnSchema,
    PriceSeries,
    ReturnSeries,
    load_csv,
    log_returns,
    window,
)

__version__ = "0.1.0"
