"""Multicollinearity diagnostics, sample replication and perturbation analysis."""

__version__ = "0.1.0"

from .augmentation import (
    AugmentationPlan,
    AugmentedPrediction,
    IdentityCheck,
    predict_augmented,
    replicate_sample,
    required_replication,
    verify_identities,
)
from .datasets import CsvSchema, YorkParams, load_csv, york_dataset, york_design
from .diagnostics import (
    DiagnosticsReport,
    Verdict,
    classify,
    condition_number,
    condition_number_of,
    correlation_determinant,
    diagnose,
    variance_decomposition,
    vif,
)
from .errors import *  # noqa: F401,F403
from .linalg import euclidean_norm, solve_least_squares, symmetric_eigenvalues, unit_length_scale
from .perturbation import (
    PerturbationConfig,
    PerturbationSummary,
    coefficient_shift,
    monte_carlo_stability,
    perturb_design,
    perturb_vector,
)
from .regression import Dataset, FitResult, SignificanceConfig, fit_ols, significance_stars
from .report import Report, export_report, load_report
from .tdist import student_t_cdf, student_t_quantile
