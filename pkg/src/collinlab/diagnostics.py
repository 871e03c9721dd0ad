"""Multicollinearity measures: VIF, condition number, correlation determinant.

Severity thresholds follow the usual rules of thumb: a condition number
below 20 is light, 20 to 30 moderate and above 30 strong; a VIF of 10 or
more is problematic, with 4 kept as a stricter secondary flag.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CollinLabError, ConstantColumn, PerfectFit, RankDeficient
from .linalg import as_matrix, solve_least_squares, symmetric_eigenvalues, unit_length_scale
from .regression import Dataset, FitResult, fit_ols

CN_MODERATE = 20.0
CN_STRONG = 30.0
VIF_PROBLEMATIC = 10.0
VIF_SECONDARY = 4.0
PERFECT_FIT_TOL = 1e-12
EIGEN_RTOL = 1e-14

SCALINGS = ("unit_length", "raw")


def _regressor_columns(data: Dataset) -> list[int]:
    idx = data.regressor_index
    if not idx:
        raise CollinLabError("dataset has no non-intercept regressors")
    return idx


def auxiliary_r2(data: Dataset, j: int) -> float:
    """R^2 of column ``j`` regressed on every other column of the design.

    The other columns include the intercept when the model has one, and
    the R^2 is centred in that case (uncentred otherwise).
    """
    X = data.X
    target = X[:, j]
    others = np.delete(X, j, axis=1)
    if others.shape[1] == 0:
        return 0.0
    coef = solve_least_squares(others, target)
    resid = target - others @ coef
    centred = target - target.mean() if data.has_intercept else target
    sct = float(centred @ centred)
    if sct == 0.0:
        raise ConstantColumn(f"column {data.names[j]!r} is constant")
    return 1.0 - float(resid @ resid) / sct


def vif(data: Dataset) -> np.ndarray:
    """Variance inflation factor ``1 / (1 - R_j^2)`` of each non-intercept regressor."""
    cols = _regressor_columns(data)
    if len(cols) < 2:
        raise CollinLabError("VIF needs at least two regressors besides the intercept")
    out = []
    for j in cols:
        r2 = auxiliary_r2(data, j)
        if 1.0 - r2 < PERFECT_FIT_TOL:
            raise PerfectFit(f"column {data.names[j]!r} is an exact linear combination of the others")
        out.append(1.0 / (1.0 - r2))
    return np.array(out)


def condition_number_of(X, scaling: str = "unit_length") -> float:
    """``sqrt(mu_max / mu_min)`` for the eigenvalues of ``X^t X``."""
    if scaling not in SCALINGS:
        raise ValueError(f"scaling must be one of {SCALINGS}, got {scaling!r}")
    X = as_matrix(X)
    if scaling == "unit_length":
        X = unit_length_scale(X)
    mu = symmetric_eigenvalues(X.T @ X)
    if mu[-1] <= EIGEN_RTOL * mu[0]:
        raise RankDeficient("smallest eigenvalue of X^t X is zero")
    return float(np.sqrt(mu[0] / mu[-1]))


def condition_number(data: Dataset, scaling: str = "unit_length") -> float:
    """Condition number of the full design (intercept included)."""
    return condition_number_of(data.X, scaling)


def correlation_matrix(data: Dataset) -> np.ndarray:
    Z = data.X[:, _regressor_columns(data)]
    Zc = Z - Z.mean(axis=0)
    sd = np.sqrt(np.sum(Zc**2, axis=0))
    if np.any(sd == 0.0):
        bad = data.names[_regressor_columns(data)[int(np.flatnonzero(sd == 0.0)[0])]]
        raise ConstantColumn(f"column {bad!r} is constant")
    Zs = Zc / sd
    C = Zs.T @ Zs
    np.fill_diagonal(C, 1.0)
    return 0.5 * (C + C.T)


def correlation_determinant(data: Dataset) -> float:
    """Determinant of the Pearson correlation matrix of the regressors, in [0, 1]."""
    if len(_regressor_columns(data)) < 2:
        raise CollinLabError("correlation determinant needs at least two regressors")
    det = float(np.linalg.det(correlation_matrix(data)))
    return min(max(det, 0.0), 1.0)


@dataclass(frozen=True)
class VarianceFactors:
    """Pieces of ``sigma2 / (n * var(X_j) * (1 - R_j^2))`` for one coefficient."""

    name: str
    sigma2_hat: float
    n: int
    var_Xj: float
    one_minus_R2j: float

    @property
    def variance(self) -> float:
        return self.sigma2_hat / (self.n * self.var_Xj * self.one_minus_R2j)


def variance_decomposition(data: Dataset, fit: FitResult | None = None) -> list[VarianceFactors]:
    """Split each slope variance into error variance, spread and collinearity.

    ``var_Xj`` is the population variance of the column (mean of squares
    when the model has no intercept), so the product reproduces the
    diagonal of the estimated covariance exactly.
    """
    fit = fit if fit is not None else fit_ols(data)
    out = []
    for j in data.regressor_index:
        x = data.X[:, j]
        xc = x - x.mean() if data.has_intercept else x
        var_x = float(xc @ xc) / data.n
        r2 = auxiliary_r2(data, j) if data.k > 1 else 0.0
        out.append(VarianceFactors(data.names[j], fit.sigma2_hat, data.n, var_x, 1.0 - r2))
    return out


@dataclass(frozen=True)
class Verdict:
    cn: str
    vif: tuple[str, ...]
    vif_above_4: tuple[bool, ...]

    @property
    def alarm(self) -> bool:
        """True when the condition number is strong or any VIF is problematic."""
        return self.cn == "strong" or "problematic" in self.vif


@dataclass(frozen=True)
class DiagnosticsReport:
    vifs: np.ndarray | None
    cn: float
    corr_det: float | None
    var_decomp: list[VarianceFactors]
    cn_scaling: str = "unit_length"
    names: tuple[str, ...] = ()
    verdict: Verdict | None = None


def classify_cn(cn: float) -> str:
    if cn < CN_MODERATE:
        return "light"
    if cn <= CN_STRONG:
        return "moderate"
    return "strong"


def classify_vif(v: float) -> str:
    return "problematic" if v >= VIF_PROBLEMATIC else "ok"


def classify(report: DiagnosticsReport) -> Verdict:
    vifs = [] if report.vifs is None else list(report.vifs)
    return Verdict(
        cn=classify_cn(report.cn),
        vif=tuple(classify_vif(v) for v in vifs),
        vif_above_4=tuple(bool(v >= VIF_SECONDARY) for v in vifs),
    )


def diagnose(data: Dataset, fit: FitResult | None = None, scaling: str = "unit_length") -> DiagnosticsReport:
    """Compute every measure for ``data`` and attach the severity verdict.

    VIF and the correlation determinant need two or more regressors; with
    fewer they are reported as ``None``.
    """
    fit = fit if fit is not None else fit_ols(data)
    many = len(data.regressor_index) >= 2
    report = DiagnosticsReport(
        vifs=vif(data) if many else None,
        cn=condition_number(data, scaling),
        corr_det=correlation_determinant(data) if many and data.has_intercept else None,
        var_decomp=variance_decomposition(data, fit),
        cn_scaling=scaling,
        names=tuple(data.names[j] for j in data.regressor_index),
    )
    return DiagnosticsReport(**{**report.__dict__, "verdict": classify(report)})
