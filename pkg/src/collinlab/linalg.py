"""Small dense linear algebra used throughout the package.

Everything here works on plain float64 numpy arrays. Matrices in this
problem domain are tiny (a handful of columns), so clarity is preferred
over blocking or other performance tricks.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_triangular

from .errors import DimensionMismatch, NotSquare, NotSymmetric, RankDeficient, ZeroColumn

RANK_RTOL = 1e-10
SYMMETRY_RTOL = 1e-10
JACOBI_RTOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def as_matrix(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
        raise DimensionMismatch(f"expected a non-empty 2-d array, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("matrix entries must be finite")
    return X


def as_vector(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.size < 1:
        raise DimensionMismatch(f"expected a non-empty 1-d array, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def qr_factor(X) -> tuple[np.ndarray, np.ndarray]:
    """Thin Householder QR of ``X`` with a numerical rank check.

    Raises
    ------
    RankDeficient
        If some ``|R_jj|`` falls below ``RANK_RTOL`` times the largest one.
    """
    X = as_matrix(X)
    n, k = X.shape
    if n < k:
        raise RankDeficient(f"{n} rows cannot support {k} columns")
    Q, R = np.linalg.qr(X, mode="reduced")
    diag = np.abs(np.diag(R))
    if diag.max() == 0.0 or np.any(diag <= RANK_RTOL * diag.max()):
        rank = int(np.sum(diag > RANK_RTOL * diag.max()))
        raise RankDeficient(f"numerical rank {rank} < {k} columns")
    return Q, R


def solve_least_squares(X, y) -> np.ndarray:
    """Return the coefficients minimising ``||y - X b||^2``.

    Solved through the QR factorisation of ``X``; the normal equations
    are never formed, so the conditioning of the problem is that of
    ``X`` rather than of ``X^t X``.
    """
    X = as_matrix(X)
    y = as_vector(y)
    if X.shape[0] != y.size:
        raise DimensionMismatch(f"X has {X.shape[0]} rows but y has length {y.size}")
    Q, R = qr_factor(X)
    return solve_triangular(R, Q.T @ y, lower=False)


def inverse_gram(R: np.ndarray) -> np.ndarray:
    """``(X^t X)^{-1}`` from the triangular QR factor of ``X``."""
    R_inv = solve_triangular(R, np.eye(R.shape[0]), lower=False)
    G = R_inv @ R_inv.T
    return 0.5 * (G + G.T)


def _check_symmetric(M: np.ndarray) -> None:
    if M.shape[0] != M.shape[1]:
        raise NotSquare(f"matrix of shape {M.shape} is not square")
    scale = np.max(np.abs(M))
    if np.max(np.abs(M - M.T)) > SYMMETRY_RTOL * scale:
        raise NotSymmetric("matrix is not symmetric")


def symmetric_eigenvalues(M) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix, sorted in descending order.

    Cyclic Jacobi: every off-diagonal pair is annihilated in turn by a
    plane rotation until the off-diagonal Frobenius norm drops below
    ``JACOBI_RTOL * ||M||_F``.
    """
    A = as_matrix(M).copy()
    _check_symmetric(A)
    A = 0.5 * (A + A.T)
    n = A.shape[0]
    target = JACOBI_RTOL * np.linalg.norm(A)

    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                # smaller root of t^2 + 2 theta t - 1 = 0, stable for large theta
                t = np.sign(theta) / (abs(theta) + np.hypot(1.0, theta)) if theta != 0 else 1.0
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                Ap = A[:, p].copy()
                Aq = A[:, q].copy()
                A[:, p] = c * Ap - s * Aq
                A[:, q] = s * Ap + c * Aq
                Ap = A[p, :].copy()
                Aq = A[q, :].copy()
                A[p, :] = c * Ap - s * Aq
                A[q, :] = s * Ap + c * Aq
                A[p, q] = A[q, p] = 0.0
    else:
        raise RuntimeError("Jacobi iteration did not converge")

    return np.sort(np.diag(A))[::-1].copy()


def euclidean_norm(v) -> float:
    v = np.asarray(v, dtype=float).ravel()
    return float(np.linalg.norm(v))


def unit_length_scale(X) -> np.ndarray:
    """Divide every column of ``X`` by its Euclidean norm."""
    X = as_matrix(X)
    norms = np.linalg.norm(X, axis=0)
    if np.any(norms == 0.0):
        bad = int(np.flatnonzero(norms == 0.0)[0])
        raise ZeroColumn(f"column {bad} has zero norm")
    return X / norms
