"""Monte-Carlo data perturbation to expose numerical instability of OLS.

Each regressor ``x`` is replaced by ``x + pct * p * ||x|| / ||p||`` for a
random direction ``p``, the model is re-fitted, and the relative change
``100 * ||beta - beta_p|| / ||beta||`` is recorded.

The direction ``p`` has i.i.d. U(0, 1) entries by default; standard
normal entries are available through ``PerturbationConfig(noise="normal")``.
Uniform noise has a non-zero mean, so each perturbation also shifts the
level of every column, which the intercept then absorbs.

Random streams
--------------
Noise is drawn from PCG64 generators seeded by
``SeedSequence(seed, spawn_key=(trial, column_key))``. Every (trial,
column) pair therefore owns an independent stream whose contents do not
depend on execution order, so sequential and parallel runs agree bit for
bit. ``column_key`` is the rank of the column's name in sorted order,
which makes results independent of the order columns are listed in.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import AllTrialsFailed, RankDeficient, ZeroNorm
from .linalg import euclidean_norm
from .regression import Dataset, fit_ols

NOISE_KINDS = ("uniform", "normal")


@dataclass(frozen=True)
class PerturbationConfig:
    pct: float = 0.01
    trials: int = 1000
    seed: int = 0
    perturb_intercept: bool = False
    noise: str = "uniform"

    def __post_init__(self):
        if self.noise not in NOISE_KINDS:
            raise ValueError(f"noise must be one of {NOISE_KINDS}, got {self.noise!r}")
        if not self.pct >= 0.0:
            raise ValueError(f"pct must be non-negative, got {self.pct}")
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")


@dataclass(frozen=True)
class PerturbationSummary:
    """Per-trial shifts (in percent) and their summary statistics.

    ``sd`` is the sample standard deviation (``ddof=1``), zero for a
    single successful trial.
    """

    shifts: np.ndarray
    mean: float
    sd: float
    min: float
    max: float
    failed: int
    config: PerturbationConfig

    @property
    def trials(self) -> int:
        return self.shifts.size + self.failed


def perturb_vector(x, pct: float, noise) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    noise = np.asarray(noise, dtype=float)
    if x.shape != noise.shape:
        raise ValueError(f"noise shape {noise.shape} does not match x shape {x.shape}")
    nx = euclidean_norm(x)
    npn = euclidean_norm(noise)
    if nx == 0.0:
        raise ZeroNorm("cannot perturb a zero vector")
    if npn == 0.0:
        raise ZeroNorm("noise vector has zero norm")
    return x + pct * noise * (nx / npn)


def column_keys(names) -> list[int]:
    order = sorted(names)
    return [order.index(name) for name in names]


def trial_rng(seed: int, trial: int, key: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial, key))))


def perturb_design(data: Dataset, cfg: PerturbationConfig, trial: int = 0) -> Dataset:
    """Perturb every regressor of ``data`` for one Monte-Carlo trial.

    The response and (unless ``cfg.perturb_intercept``) the intercept are
    left as they are.
    """
    X = np.array(data.X)
    keys = column_keys(data.names)
    cols = range(data.k) if cfg.perturb_intercept or not data.has_intercept else data.regressor_index
    for j in cols:
        rng = trial_rng(cfg.seed, trial, keys[j])
        noise = rng.random(data.n) if cfg.noise == "uniform" else rng.standard_normal(data.n)
        X[:, j] = perturb_vector(X[:, j], cfg.pct, noise)
    has_intercept = data.has_intercept and not cfg.perturb_intercept
    return Dataset(y=data.y, X=X, names=data.names, has_intercept=has_intercept)


def coefficient_shift(beta, beta_p) -> float:
    """``100 * ||beta - beta_p|| / ||beta||``."""
    beta = np.asarray(beta, dtype=float)
    beta_p = np.asarray(beta_p, dtype=float)
    if beta.shape != beta_p.shape:
        raise ValueError("coefficient vectors differ in length")
    nb = euclidean_norm(beta)
    if nb == 0.0:
        raise ZeroNorm("reference coefficients are all zero")
    return 100.0 * euclidean_norm(beta - beta_p) / nb


def _one_trial(data: Dataset, beta: np.ndarray, cfg: PerturbationConfig, trial: int) -> float | None:
    try:
        fit = fit_ols(perturb_design(data, cfg, trial))
    except RankDeficient:
        return None
    return coefficient_shift(beta, fit.beta)


def monte_carlo_stability(data: Dataset, cfg: PerturbationConfig | None = None, workers: int | None = None) -> PerturbationSummary:
    """Repeat perturb-and-refit ``cfg.trials`` times against the unperturbed fit.

    Trials with a rank-deficient perturbed design are counted in
    ``failed`` and left out of the statistics. ``workers > 1`` runs trials
    on a thread pool; results are identical to the sequential run.
    """
    cfg = cfg or PerturbationConfig()
    beta = fit_ols(data).beta
    trials = range(cfg.trials)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda t: _one_trial(data, beta, cfg, t), trials))
    else:
        results = [_one_trial(data, beta, cfg, t) for t in trials]

    shifts = np.array([r for r in results if r is not None], dtype=float)
    failed = len(results) - shifts.size
    if shifts.size == 0:
        raise AllTrialsFailed(f"all {cfg.trials} perturbed fits were rank deficient")
    shifts.setflags(write=False)
    return PerturbationSummary(
        shifts=shifts,
        mean=float(shifts.mean()),
        sd=float(shifts.std(ddof=1)) if shifts.size > 1 else 0.0,
        min=float(shifts.min()),
        max=float(shifts.max()),
        failed=failed,
        config=cfg,
    )
