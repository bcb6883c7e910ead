"""Dense linear-algebra kernels: SPD solves, square solves, largest eigenvalue.

All routines work on plain float64 numpy arrays and are pure functions of
their inputs. Pivot thresholds are fixed so that error behavior is
reproducible across runs.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import NotPositiveDefinite, Singular

# Relative pivot threshold for Cholesky and LU factorizations.
PIVOT_RTOL = 1e-12
# Relative symmetry tolerance on inputs declared symmetric.
SYMMETRY_RTOL = 1e-12
# Convergence threshold on successive Rayleigh quotients.
RAYLEIGH_TOL = 1e-10

_MAX_POWER_ITERATIONS = 20_000


def as_vector(v, name: str = "vector", allow_infinite: bool = False) -> np.ndarray:
    """Coerce to a read-only 1-D float64 array, rejecting NaN (and, unless
    allowed, infinities)."""
    arr = np.array(v, dtype=float, copy=True)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if allow_infinite:
        if np.isnan(arr).any():
            raise ValueError(f"{name} contains NaN entries")
    elif not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Coerce to a read-only 2-D float64 array with finite entries."""
    arr = np.array(M, dtype=float, copy=True)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be two-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


def _require_symmetric(S: np.ndarray, name: str) -> None:
    if S.shape[0] != S.shape[1]:
        raise ValueError(f"{name} must be square, got shape {S.shape}")
    if S.size == 0:
        return
    scale = max(1.0, float(np.abs(S).max()))
    if float(np.abs(S - S.T).max()) > SYMMETRY_RTOL * scale:
        raise ValueError(f"{name} is not symmetric within tolerance")


def cholesky_factor(S) -> np.ndarray:
    """Lower-triangular Cholesky factor of a symmetric positive-definite matrix.

    Raises NotPositiveDefinite when a pivot drops to PIVOT_RTOL times the
    largest diagonal entry of the input, which signals rank deficiency.
    """
    S = as_matrix(S, "S")
    _require_symmetric(S, "S")
    n = S.shape[0]
    factor = np.zeros((n, n))
    limit = PIVOT_RTOL * (float(np.diag(S).max()) if n else 0.0)
    for j in range(n):
        pivot = S[j, j] - factor[j, :j] @ factor[j, :j]
        if pivot <= limit:
            raise NotPositiveDefinite(
                f"pivot {pivot:.3e} at index {j} is at or below threshold {limit:.3e}"
            )
        factor[j, j] = math.sqrt(pivot)
        if j + 1 < n:
            factor[j + 1 :, j] = (S[j + 1 :, j] - factor[j + 1 :, :j] @ factor[j, :j]) / factor[j, j]
    return factor


def cholesky_solve_factored(factor: np.ndarray, rhs) -> np.ndarray:
    """Solve S w = rhs given the lower-triangular factor of S."""
    rhs = as_vector(rhs, "rhs")
    n = factor.shape[0]
    if rhs.shape[0] != n:
        raise ValueError(f"rhs has length {rhs.shape[0]}, expected {n}")
    y = np.zeros(n)
    for i in range(n):
        y[i] = (rhs[i] - factor[i, :i] @ y[:i]) / factor[i, i]
    w = np.zeros(n)
    for i in range(n - 1, -1, -1):
        w[i] = (y[i] - factor[i + 1 :, i] @ w[i + 1 :]) / factor[i, i]
    return w


def cholesky_solve(S, rhs) -> np.ndarray:
    """Solve S w = rhs for symmetric positive-definite S."""
    return cholesky_solve_factored(cholesky_factor(S), rhs)


def solve_square(M, rhs) -> np.ndarray:
    """Solve M w = rhs by LU factorization with partial pivoting.

    Raises Singular when the best available pivot is below PIVOT_RTOL times
    the largest absolute entry of M.
    """
    M = as_matrix(M, "M")
    rhs = as_vector(rhs, "rhs")
    n = M.shape[0]
    if M.shape[1] != n:
        raise ValueError(f"M must be square, got shape {M.shape}")
    if rhs.shape[0] != n:
        raise ValueError(f"rhs has length {rhs.shape[0]}, expected {n}")
    if n == 0:
        return np.zeros(0)
    lu = M.copy()
    b = rhs.copy()
    limit = PIVOT_RTOL * float(np.abs(M).max())
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if abs(lu[p, k]) < limit or lu[p, k] == 0.0:
            raise Singular(f"pivot {lu[p, k]:.3e} in column {k} below threshold {limit:.3e}")
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            b[[k, p]] = b[[p, k]]
        lu[k + 1 :, k] /= lu[k, k]
        lu[k + 1 :, k + 1 :] -= np.outer(lu[k + 1 :, k], lu[k, k + 1 :])
    # forward substitution on the unit-lower factor, then back substitution
    for i in range(n):
        b[i] -= lu[i, :i] @ b[:i]
    w = np.zeros(n)
    for i in range(n - 1, -1, -1):
        w[i] = (b[i] - lu[i, i + 1 :] @ w[i + 1 :]) / lu[i, i]
    return w


def _power_run(S: np.ndarray, start: np.ndarray) -> tuple[float, int]:
    """One power-iteration run; returns (Rayleigh quotient, iterations used)."""
    norm = float(np.linalg.norm(start))
    if norm == 0.0:
        return 0.0, 0
    v = start / norm
    rq_prev = float(v @ S @ v)
    streak = 0
    for k in range(1, _MAX_POWER_ITERATIONS + 1):
        w = S @ v
        nw = float(np.linalg.norm(w))
        if nw <= 1e-300:
            # start vector lies in the kernel
            return 0.0, k
        v = w / nw
        rq = float(v @ S @ v)
        if abs(rq - rq_prev) < RAYLEIGH_TOL:
            streak += 1
            if streak >= 2:
                return rq, k
        else:
            streak = 0
        rq_prev = rq
    return rq_prev, _MAX_POWER_ITERATIONS


def largest_eigenvalue(S) -> float:
    """Largest eigenvalue of a symmetric positive-semidefinite matrix.

    Power iteration from the all-ones vector. If the run locks in
    immediately (the start is already an eigenvector, possibly of a
    non-dominant eigenvalue), a second run from the index-weighted vector
    (1, 2, ..., n) breaks the tie and the larger result is returned.
    """
    S = as_matrix(S, "S")
    _require_symmetric(S, "S")
    n = S.shape[0]
    if n == 0:
        raise ValueError("S must be non-empty")
    lam, iters = _power_run(S, np.ones(n))
    if iters <= 3:
        lam_alt, _ = _power_run(S, 1.0 + np.arange(n, dtype=float))
        lam = max(lam, lam_alt)
    return lam
