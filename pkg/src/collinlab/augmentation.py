"""Enlarging a sample by stacking exact copies of it.

Stacking ``h`` copies of ``(y, X)`` leaves the coefficient estimates and
R^2 untouched, multiplies both sums of squares by ``h`` and shrinks the
coefficient covariance by ``(n - k) / (n h - k)``. Everything a re-fit on
the enlarged sample would report is therefore available in closed form
from the original fit.

Throughout, ``h`` is the *total* number of copies: ``h = 1`` is the
original sample and ``h = 8`` applied to 17 observations gives 136 rows.
A sample described as "repeated m more times" corresponds to ``h = m + 1``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateT
from .regression import Dataset, FitResult, fit_ols
from .tdist import normal_quantile, two_sided_critical

T_TOL = np.sqrt(np.finfo(float).eps)


def replicate_sample(data: Dataset, h: int) -> Dataset:
    """Stack ``h`` copies of the observations on top of each other."""
    h = int(h)
    if h < 1:
        raise ValueError(f"h must be at least 1, got {h}")
    return Dataset(
        y=np.tile(data.y, h),
        X=np.tile(data.X, (h, 1)),
        names=data.names,
        has_intercept=data.has_intercept,
    )


@dataclass(frozen=True)
class AugmentedPrediction:
    beta: np.ndarray
    sigma2_hat: float
    se: np.ndarray
    t_stats: np.ndarray
    f_stat: float | None
    r2: float
    r2_adj: float
    h: int
    n: int
    k: int
    cov: np.ndarray
    scr: float
    sct: float

    @property
    def df_resid(self) -> int:
        return self.n * self.h - self.k


def predict_augmented(fit: FitResult, h: int) -> AugmentedPrediction:
    """Statistics of the ``h``-fold replicated sample, without re-fitting."""
    h = int(h)
    if h < 1:
        raise ValueError(f"h must be at least 1, got {h}")
    n, k = fit.n, fit.k
    if h == 1:
        return AugmentedPrediction(
            beta=fit.beta, sigma2_hat=fit.sigma2_hat, se=fit.se, t_stats=fit.t_stats,
            f_stat=fit.f_stat, r2=fit.r2, r2_adj=fit.r2_adj, h=1, n=n, k=k,
            cov=fit.cov, scr=fit.scr, sct=fit.sct,
        )
    shrink = (n - k) / (n * h - k)
    cov = shrink * fit.cov
    return AugmentedPrediction(
        beta=fit.beta,
        sigma2_hat=h * shrink * fit.sigma2_hat,
        se=np.sqrt(shrink) * fit.se,
        t_stats=fit.t_stats / np.sqrt(shrink),
        f_stat=None if fit.f_stat is None else fit.f_stat / shrink,
        r2=fit.r2,
        r2_adj=1.0 - (1.0 - fit.r2) * (n * h - 1) / (n * h - k),
        h=h,
        n=n,
        k=k,
        cov=cov,
        scr=h * fit.scr,
        sct=h * fit.sct,
    )


IDENTITY_FIELDS = ("beta", "scr", "sct", "r2", "r2_adj", "sigma2_hat", "cov", "t_stats", "f_stat")


def _rel_dev(actual, predicted) -> float:
    """Max absolute difference relative to the size of ``predicted`` (normwise)."""
    if actual is None or predicted is None:
        return 0.0 if actual is None and predicted is None else math.inf
    a = np.atleast_1d(np.asarray(actual, dtype=float))
    p = np.atleast_1d(np.asarray(predicted, dtype=float))
    if np.all(np.isinf(p)) and np.array_equal(a, p):
        return 0.0
    scale = np.max(np.abs(p))
    diff = np.max(np.abs(a - p))
    return float(diff / scale) if scale > 0 else float(diff)


@dataclass(frozen=True)
class IdentityCheck:
    h: int
    refit: FitResult
    predicted: AugmentedPrediction
    deviations: dict

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values())

    def ok(self, tol: float = 1e-8) -> bool:
        return self.max_deviation < tol


def verify_identities(data: Dataset, h: int, fit: FitResult | None = None) -> IdentityCheck:
    """Re-fit on the replicated sample and compare with the closed forms.

    Deviations are normwise relative: ``max|refit - predicted| / max|predicted|``.
    """
    fit = fit if fit is not None else fit_ols(data)
    refit = fit_ols(replicate_sample(data, h))
    pred = predict_augmented(fit, h)
    deviations = {name: _rel_dev(getattr(refit, name), getattr(pred, name)) for name in IDENTITY_FIELDS}
    return IdentityCheck(h=int(h), refit=refit, predicted=pred, deviations=deviations)


@dataclass(frozen=True)
class AugmentationPlan:
    """Replication bound for each coefficient and the total copies needed.

    ``bounds[i]`` is NaN for coefficients left out of the selection.
    """

    bounds: np.ndarray
    h_required: int
    alpha: float
    t_critical_approx: float
    selected: tuple[int, ...]
    excluded: tuple[int, ...] = ()
    exact: bool = False

    @property
    def per_coefficient(self) -> list[int | None]:
        return [None if np.isnan(b) else max(1, math.ceil(b)) for b in self.bounds]


def replication_bound(t_exp, n: int, k: int, critical: float) -> np.ndarray:
    """``(1/n) * ((critical / t_exp)^2 * (n - k) + k)`` elementwise."""
    t_exp = np.asarray(t_exp, dtype=float)
    return ((critical / t_exp) ** 2 * (n - k) + k) / n


def _predicted_t(fit: FitResult, h: int, idx) -> np.ndarray:
    return fit.t_stats[list(idx)] * np.sqrt((fit.n * h - fit.k) / (fit.n - fit.k))


def required_replication(
    fit: FitResult,
    alpha: float = 0.05,
    include_intercept: bool = False,
    exact: bool = False,
) -> AugmentationPlan:
    """Smallest number of total copies making the selected slopes significant.

    The critical value ``t_{nh-k}(1 - alpha/2)`` depends on the unknown
    ``h``; by default it is replaced by its normal limit (1.96 exactly
    for ``alpha = 0.05``) and ``h_i = ceil(bound_i)``. With ``exact=True``
    the search continues until every selected coefficient clears the
    exact Student t quantile at ``n h - k`` degrees of freedom.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    n, k = fit.n, fit.k
    candidates = [i for i in range(k) if include_intercept or not (fit.has_intercept and i == 0)]
    names = fit.names or tuple(f"b{i}" for i in range(k))

    selected, excluded = [], []
    for i in candidates:
        t = float(fit.t_stats[i])
        if t == 0.0:
            raise DegenerateT(f"coefficient {names[i]!r} has t = 0; no replication makes it significant", names[i])
        if t < T_TOL:
            warnings.warn(f"coefficient {names[i]!r} has t = {t:.3g}; excluded from the bound", stacklevel=2)
            excluded.append(i)
        else:
            selected.append(i)

    crit = 1.96 if alpha == 0.05 else normal_quantile(1.0 - alpha / 2.0)
    bounds = np.full(k, np.nan)
    if selected:
        bounds[selected] = replication_bound(fit.t_stats[selected], n, k, crit)
    h = max([1] + [math.ceil(b) for b in bounds[selected]])

    if exact and selected:
        # the normal quantile is below every t quantile, so this start never overshoots
        z = normal_quantile(1.0 - alpha / 2.0)
        h = max([1] + [math.ceil(b) for b in replication_bound(fit.t_stats[selected], n, k, z)])
        while not np.all(_predicted_t(fit, h, selected) > two_sided_critical(alpha, n * h - k)):
            h += 1

    return AugmentationPlan(
        bounds=bounds,
        h_required=int(h),
        alpha=alpha,
        t_critical_approx=crit,
        selected=tuple(selected),
        excluded=tuple(excluded),
        exact=exact,
    )
