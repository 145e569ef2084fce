"""Dense linear-algebra kernel with explicit numerical-rank tolerances.

Everything downstream (feasibility tests, rank arguments, kernel bases)
funnels through these four operations so rank decisions are consistent:
``rank`` and ``nullspace`` are computed from the same singular-value
threshold, hence ``rank(a) + nullspace(a).shape[1] == a.shape[1]`` always
holds.  Determinants use LU with partial pivoting.

All functions are pure and operate on plain numpy arrays.
"""

from typing import NamedTuple

import numpy as np

from ._validation import check_matrix, check_vector


class LsqResult(NamedTuple):
    """Least-squares solve outcome: minimum-norm solution, residual 2-norm, numerical rank."""

    solution: np.ndarray
    residual_norm: float
    rank: int


def default_rank_tol(a):
    """Relative singular-value cutoff: 1e-10 scaled by the larger matrix dimension."""
    return 1e-10 * max(a.shape)


def _svd_rank(s, rank_tol):
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rank_tol * s[0]))


def lstsq(a, b, rank_tol=None):
    """Minimum-norm least-squares solution of ``a @ x = b``.

    Parameters
    ----------
    a : array-like, (rows, cols)
    b : array-like, (rows,)
    rank_tol : float, optional
        Relative threshold below which singular values are treated as zero.
        Defaults to ``default_rank_tol(a)``.

    Returns
    -------
    LsqResult
        ``solution`` (length cols), ``residual_norm`` = ||a @ solution - b||,
        and the numerical ``rank`` of ``a``.
    """
    a = check_matrix(a, "a")
    b = check_vector(b, length=a.shape[0], name="b")
    if rank_tol is None:
        rank_tol = default_rank_tol(a)
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    r = _svd_rank(s, rank_tol)
    if r == 0:
        solution = np.zeros(a.shape[1])
    else:
        solution = vt[:r].T @ ((u[:, :r].T @ b) / s[:r])
    residual_norm = float(np.linalg.norm(a @ solution - b))
    return LsqResult(solution, residual_norm, r)


def nullspace(a, rank_tol=None):
    """Orthonormal basis of the numerical null space of ``a``.

    Returns an array of shape (cols, nullity) whose columns are the basis
    vectors; the array has zero columns when ``a`` has full column rank.
    """
    a = check_matrix(a, "a")
    if rank_tol is None:
        rank_tol = default_rank_tol(a)
    elif rank_tol <= 0:
        raise ValueError("rank_tol must be positive")
    _, s, vt = np.linalg.svd(a, full_matrices=True)
    r = _svd_rank(s, rank_tol)
    return vt[r:].T.copy()


def rank(a, rank_tol=None):
    """Numerical rank of ``a``, consistent with ``nullspace`` (rank + nullity = cols)."""
    a = check_matrix(a, "a")
    if rank_tol is None:
        rank_tol = default_rank_tol(a)
    elif rank_tol <= 0:
        raise ValueError("rank_tol must be positive")
    s = np.linalg.svd(a, compute_uv=False)
    return _svd_rank(s, rank_tol)


def det(a):
    """Determinant of a square matrix (LU factorization with partial pivoting)."""
    a = check_matrix(a, "a")
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"determinant requires a square matrix, got shape {a.shape}")
    return float(np.linalg.det(a))
