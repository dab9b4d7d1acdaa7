"""Dense linear-algebra kernels for small systems.

Matrices are plain 2-D ``numpy`` arrays. Factorizations go through LAPACK
(``scipy.linalg.lu_factor`` and ``numpy.linalg.eigvals``); this module adds
the singularity thresholds, conditioning estimates and error types the rest
of the package relies on.
"""

import warnings

import numpy as np
import scipy.linalg

from . import _tolerances as tol
from .exceptions import (
    DimensionMismatch,
    IllConditionedWarning,
    NoConvergence,
    SingularMatrix,
    ZeroRow,
)


def as_matrix(M, square=False, name="matrix"):
    """Coerce ``M`` to a finite 2-D float (or complex) array."""
    M = np.asarray(M)
    if not np.iscomplexobj(M):
        M = M.astype(float)
    if M.ndim != 2 or M.shape[0] < 1 or M.shape[1] < 1:
        raise DimensionMismatch(f"{name} must be a non-empty 2-D array, got shape {M.shape}")
    if square and M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{name} contains non-finite entries")
    return M


def _lu(M):
    M = as_matrix(M, square=True)
    scale = np.max(np.abs(M))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        lu, piv = scipy.linalg.lu_factor(M, check_finite=False)
    pivots = np.abs(np.diag(lu))
    if scale == 0 or np.min(pivots) < tol.PIVOT_RTOL * scale:
        k = int(np.argmin(pivots))
        raise SingularMatrix(f"pivot {k} has magnitude {pivots[k]:.3e} (matrix scale {scale:.3e})")
    return lu, piv


def solve_linear(M, rhs):
    """Solve ``M x = rhs`` by partially pivoted LU elimination.

    Raises :class:`SingularMatrix` when a pivot falls below ``1e-14`` times
    the largest entry of ``M``.
    """
    M = as_matrix(M, square=True)
    rhs = np.asarray(rhs, dtype=np.result_type(M, float))
    if rhs.shape[0] != M.shape[0]:
        raise DimensionMismatch(f"rhs has length {rhs.shape[0]}, expected {M.shape[0]}")
    lu, piv = _lu(M)
    return scipy.linalg.lu_solve((lu, piv), rhs, check_finite=False)


def invert(M):
    """Return ``(M^-1, cond)`` where ``cond`` is the 1-norm condition number.

    The inverse is built column by column from one LU factorization. An
    :class:`IllConditionedWarning` is emitted when ``cond > 1e12``.
    """
    M = as_matrix(M, square=True)
    lu, piv = _lu(M)
    eye = np.eye(M.shape[0], dtype=M.dtype)
    inv = scipy.linalg.lu_solve((lu, piv), eye, check_finite=False)
    cond = float(np.linalg.norm(M, 1) * np.linalg.norm(inv, 1))
    if cond > tol.ILL_CONDITIONED:
        warnings.warn(f"condition estimate {cond:.3e} exceeds {tol.ILL_CONDITIONED:.0e}",
                      IllConditionedWarning, stacklevel=2)
    return inv, cond


def det(M):
    """Determinant via pivoted LU; works for real and complex input.

    Unlike :func:`solve_linear` this never raises on a tiny pivot, since a
    vanishing determinant is a legitimate answer.
    """
    M = as_matrix(M, square=True)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        lu, piv = scipy.linalg.lu_factor(M, check_finite=False)
    swaps = np.count_nonzero(piv != np.arange(M.shape[0]))
    sign = -1.0 if swaps % 2 else 1.0
    return sign * np.prod(np.diag(lu))


def eig_general(M):
    """All eigenvalues of a real (nonsymmetric) square matrix.

    Delegates to LAPACK ``geev`` (balancing, Hessenberg reduction, shifted
    QR). Returns a complex array of length ``n``; complex eigenvalues of a
    real matrix come in exact conjugate pairs.
    """
    M = as_matrix(M, square=True)
    if M.shape[0] > tol.MAX_EIG_DIM:
        raise DimensionMismatch(f"eig_general supports n <= {tol.MAX_EIG_DIM}, got {M.shape[0]}")
    try:
        vals = np.linalg.eigvals(M)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return vals.astype(complex)


def spectral_radius(M):
    return float(np.max(np.abs(eig_general(M))))


def row_normalize(M, nonneg=True):
    """Scale each row of ``M`` so it sums to one."""
    M = as_matrix(M)
    if nonneg and np.any(M < 0):
        i, j = np.argwhere(M < 0)[0]
        raise ValueError(f"negative entry at ({i}, {j})")
    sums = M.sum(axis=1)
    bad = np.flatnonzero(sums <= tol.ZERO_ROW)
    if bad.size:
        raise ZeroRow(f"row {bad[0]} sums to {sums[bad[0]]:.3e}")
    # Rows already stochastic to rounding level are left untouched, which
    # makes the operation idempotent bit-for-bit.
    done = np.abs(sums - 1.0) <= 8 * M.shape[1] * np.finfo(float).eps
    out = M.copy()
    out[~done] = M[~done] / sums[~done, None]
    return out
