"""Ordinary least squares with the statistics reported in regression tables."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_triangular

from .errors import DimensionMismatch, TooFewObservations
from .linalg import as_matrix, as_vector, inverse_gram, qr_factor
from .tdist import student_t_quantile

__all__ = [
    "Dataset",
    "FitResult",
    "SignificanceConfig",
    "fit_ols",
    "significance_stars",
    "stars_from_t",
    "student_t_quantile",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Dataset:
    """Response ``y`` and design ``X`` (intercept included as column 0 when present)."""

    y: np.ndarray
    X: np.ndarray
    names: tuple[str, ...]
    has_intercept: bool = True

    def __post_init__(self):
        y = as_vector(self.y)
        X = as_matrix(self.X)
        if X.shape[0] != y.size:
            raise DimensionMismatch(f"X has {X.shape[0]} rows but y has length {y.size}")
        names = tuple(str(s) for s in self.names)
        if len(names) != X.shape[1]:
            raise DimensionMismatch(f"{len(names)} names for {X.shape[1]} columns")
        if len(set(names)) != len(names):
            raise ValueError("column names must be unique")
        if self.has_intercept and not np.all(X[:, 0] == 1.0):
            raise ValueError("has_intercept is set but column 0 is not all ones")
        if X.shape[0] < 1 or X.shape[1] < 1:
            raise DimensionMismatch(f"empty design of shape {X.shape}")
        # n > k is enforced when fitting, so a loaded file can be inspected first
        object.__setattr__(self, "y", _frozen(y))
        object.__setattr__(self, "X", _frozen(X))
        object.__setattr__(self, "names", names)

    @classmethod
    def from_arrays(cls, y, regressors, names=None, intercept=True, intercept_name="const"):
        """Build a dataset from raw regressors, prepending a column of ones if asked."""
        Z = np.asarray(regressors, dtype=float)
        if Z.ndim == 1:
            Z = Z[:, None]
        if not (intercept and Z.ndim == 2 and Z.shape[1] == 0):
            Z = as_matrix(Z)
        if names is None:
            names = [f"x{j + 1}" for j in range(Z.shape[1])]
        names = list(names)
        if intercept:
            Z = np.column_stack([np.ones(Z.shape[0]), Z])
            names = [intercept_name] + names
        return cls(y=y, X=Z, names=tuple(names), has_intercept=intercept)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def k(self) -> int:
        return self.X.shape[1]

    @property
    def regressor_index(self) -> list[int]:
        """Column indices of the non-intercept regressors."""
        return list(range(1, self.k)) if self.has_intercept else list(range(self.k))

    def with_X(self, X) -> Dataset:
        return Dataset(y=self.y, X=X, names=self.names, has_intercept=self.has_intercept)


@dataclass(frozen=True)
class FitResult:
    beta: np.ndarray
    se: np.ndarray
    sigma2_hat: float
    r2: float
    r2_adj: float
    t_stats: np.ndarray
    f_stat: float | None
    n: int
    k: int
    cov: np.ndarray
    scr: float
    sct: float
    has_intercept: bool = True
    names: tuple[str, ...] = field(default=())

    @property
    def df_resid(self) -> int:
        return self.n - self.k

    @property
    def df_model(self) -> int:
        return self.k - 1 if self.has_intercept else self.k


def _f_statistic(r2: float, df_model: int, df_resid: int) -> float | None:
    if df_model == 0:
        return None
    if r2 >= 1.0:
        return float("inf")
    return (r2 / df_model) / ((1.0 - r2) / df_resid)


def fit_ols(data: Dataset) -> FitResult:
    """Fit ``y = X beta + u`` by least squares.

    The residual sum of squares ``scr`` and total sum of squares ``sct``
    (centred when the model has an intercept) are kept on the result so
    that replication identities can be checked against them.
    """
    X, y = data.X, data.y
    n, k = X.shape
    if n <= k:
        raise TooFewObservations(f"n = {n} must exceed k = {k}")
    Q, R = qr_factor(X)
    beta = solve_triangular(R, Q.T @ y, lower=False)
    resid = y - X @ beta
    scr = float(resid @ resid)
    yc = y - y.mean() if data.has_intercept else y
    sct = float(yc @ yc)
    df_resid = n - k
    sigma2 = scr / df_resid
    cov = sigma2 * inverse_gram(R)
    se = np.sqrt(np.diag(cov))

    if data.has_intercept and k == 1:
        r2 = 0.0
    elif sct == 0.0:
        r2 = 0.0
    else:
        r2 = 1.0 - scr / sct
    r2_adj = 1.0 - (1.0 - r2) * (n - 1) / df_resid
    df_model = k - 1 if data.has_intercept else k
    with np.errstate(divide="ignore", invalid="ignore"):
        t_stats = np.abs(beta / se)

    return FitResult(
        beta=_frozen(beta),
        se=_frozen(se),
        sigma2_hat=sigma2,
        r2=r2,
        r2_adj=r2_adj,
        t_stats=_frozen(t_stats),
        f_stat=_f_statistic(r2, df_model, df_resid),
        n=n,
        k=k,
        cov=_frozen(cov),
        scr=scr,
        sct=sct,
        has_intercept=data.has_intercept,
        names=data.names,
    )


@dataclass(frozen=True)
class SignificanceConfig:
    """Confidence levels for one, two and three stars (in that order)."""

    alpha_levels: tuple[float, ...] = (0.90, 0.95, 0.99)

    def __post_init__(self):
        levels = tuple(float(a) for a in self.alpha_levels)
        if not levels:
            raise ValueError("at least one confidence level is required")
        if any(not 0.0 < a < 1.0 for a in levels):
            raise ValueError("confidence levels must lie strictly between 0 and 1")
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise ValueError("confidence levels must be strictly increasing")
        object.__setattr__(self, "alpha_levels", levels)


def stars_from_t(t_stats, df_resid: int, cfg: SignificanceConfig | None = None) -> list[str]:
    cfg = cfg or SignificanceConfig()
    crit = [student_t_quantile(1.0 - (1.0 - level) / 2.0, df_resid) for level in cfg.alpha_levels]
    return ["*" * sum(1 for c in crit if t > c) for t in np.asarray(t_stats, dtype=float)]


def significance_stars(fit: FitResult, cfg: SignificanceConfig | None = None) -> list[str]:
    """One star per confidence level at which each coefficient is significant.

    Coefficient ``i`` is labelled with the highest level ``l`` for which
    ``|t_i| > t_{n-k}(1 - (1 - l)/2)``.
    """
    return stars_from_t(fit.t_stats, fit.df_resid, cfg)
