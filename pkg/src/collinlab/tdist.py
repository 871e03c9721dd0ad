"""Student t and normal quantiles used by the significance tests."""

from __future__ import annotations

import math
from statistics import NormalDist

from scipy.special import betainc, betaincinv, gammaln


def student_t_cdf(t: float, df: float) -> float:
    """CDF of Student's t through the regularised incomplete beta function."""
    if df <= 0:
        raise ValueError("df must be positive")
    if t == 0.0:
        return 0.5
    if math.isinf(t):
        return 1.0 if t > 0 else 0.0
    x = df / (df + t * t)
    tail = 0.5 * float(betainc(0.5 * df, 0.5, x))
    return 1.0 - tail if t > 0 else tail


def student_t_pdf(t: float, df: float) -> float:
    logc = gammaln(0.5 * (df + 1)) - gammaln(0.5 * df) - 0.5 * math.log(df * math.pi)
    return math.exp(logc - 0.5 * (df + 1) * math.log1p(t * t / df))


def student_t_quantile(p: float, df: float) -> float:
    """Value ``q`` with ``P(T_df <= q) = p``.

    The upper tail ``2 * min(p, 1 - p)`` is mapped back through the
    inverse incomplete beta function, then polished with one Newton step
    on the CDF.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie strictly between 0 and 1, got {p}")
    if df < 1:
        raise ValueError(f"df must be at least 1, got {df}")
    if p == 0.5:
        return 0.0
    upper = min(p, 1.0 - p)
    x = float(betaincinv(0.5 * df, 0.5, 2.0 * upper))
    q = math.sqrt(df * (1.0 - x) / x) if x > 0 else math.inf
    if math.isfinite(q):
        dens = student_t_pdf(q, df)
        if dens > 0:
            q -= (student_t_cdf(q, df) - (1.0 - upper)) / dens
    return q if p > 0.5 else -q


def normal_quantile(p: float) -> float:
    return NormalDist().inv_cdf(p)


def two_sided_critical(alpha: float, df: float) -> float:
    """``t_df(1 - alpha/2)``."""
    return student_t_quantile(1.0 - alpha / 2.0, df)
