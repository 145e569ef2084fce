"""Noisy recovery: joint minimization over row selections and signals.

With additive noise the feasibility test of the exact solver degrades into a
ranking problem: for every candidate selection solve the least-squares
problem and keep the global minimizer.  The per-selection residual equals
``||y||`` times the sine of the angle between ``y`` and the candidate's
column span, so ranking by residual and ranking by subspace distance agree;
``subspace_distance`` exposes that score for analysis.  It is symmetric and
bounded in [0, 1] but does not satisfy the triangle inequality, so it is
used only for ranking, never as a metric.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import check_matrix, check_vector
from .linalg import default_rank_tol, lstsq
from .sampling import NoiseSpec, Selection, enumerate_selections, measure


@dataclass
class RobustReport:
    """Global least-squares minimizer over all selections, plus the runner-up gap."""

    x_hat: np.ndarray
    best_selection: Selection
    best_residual: float
    runner_up_residual: float

    def to_dict(self):
        return {
            "x_hat": [float(v) for v in self.x_hat],
            "best_selection": list(self.best_selection.picks),
            "best_residual": self.best_residual,
            "runner_up_residual": self.runner_up_residual,
        }


def robust_recover(a, y, n=None):
    """Minimize ``||y - a[picks] @ x||`` jointly over selections and signals.

    Every ordered selection of ``n`` rows (``n = len(y)``) is scored by its
    least-squares residual; the minimizer wins, with ties broken by
    lexicographic pick order.  ``runner_up_residual`` is the best residual
    among the remaining selections (infinity when there is only one).
    """
    a = check_matrix(a, "a")
    y = check_vector(y, name="y")
    m, k = a.shape
    if n is None:
        n = y.shape[0]
    if n != y.shape[0]:
        raise ValueError(f"y has {y.shape[0]} entries, expected n={n}")
    if not k <= n <= m:
        raise ValueError(f"need cols <= n <= rows, got cols={k}, n={n}, rows={m}")

    best = None
    best_residual = np.inf
    runner_up = np.inf
    for sel in enumerate_selections(m, n):
        result = lstsq(a[list(sel.picks)], y)
        if result.residual_norm < best_residual:
            runner_up = best_residual
            best_residual = result.residual_norm
            best = (result.solution, sel)
        elif result.residual_norm < runner_up:
            runner_up = result.residual_norm
    return RobustReport(
        x_hat=best[0],
        best_selection=best[1],
        best_residual=float(best_residual),
        runner_up_residual=float(runner_up),
    )


def subspace_distance(m1, m2):
    """Sine of the smallest principal angle between two column spans.

    Computed from orthonormal bases Q1, Q2 of the spans as
    ``sqrt(1 - sigma^2)`` where ``sigma`` is the largest singular value of
    ``Q1.T @ Q2``, clamped to [0, 1] against rounding.  Returns 0 exactly
    when the spans intersect nontrivially and 1 when they are orthogonal.
    """
    m1 = check_matrix(m1, "m1")
    m2 = check_matrix(m2, "m2")
    if m1.shape[0] != m2.shape[0]:
        raise ValueError("inputs must have the same number of rows")
    q1 = _orthonormal_span(m1)
    q2 = _orthonormal_span(m2)
    sigma = np.linalg.svd(q1.T @ q2, compute_uv=False)
    largest = min(1.0, float(sigma[0])) if sigma.size else 0.0
    return float(np.sqrt(1.0 - largest**2))


def _orthonormal_span(a):
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    r = int(np.count_nonzero(s > default_rank_tol(a) * s[0])) if s[0] > 0 else 0
    if r == 0:
        raise ValueError("zero matrix has no column span")
    return u[:, :r]


def stability_sweep(a, x, sel, snrs, trials, seed=0):
    """Relative recovery error of the robust solver across an SNR ladder.

    For each SNR, draws ``trials`` independent noisy measurements of the
    fixed instance ``(a, x, sel)`` and reports
    ``(snr, mean relative error, max relative error)`` rows, where relative
    error is ``||x_hat - x|| / ||x||``.  ``math.inf`` is accepted as a
    noiseless sentinel.
    """
    a = check_matrix(a, "a")
    x = check_vector(x, length=a.shape[1], name="x")
    snrs = list(snrs)
    if not snrs:
        raise ValueError("snrs must be nonempty")
    if any(s2 <= s1 for s1, s2 in zip(snrs, snrs[1:])):
        raise ValueError("snrs must be strictly ascending")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    x_norm = np.linalg.norm(x)
    if x_norm == 0.0:
        raise ValueError("relative error and SNR are undefined for x = 0")

    rows = []
    for i, snr in enumerate(snrs):
        if not snr > 0:
            raise ValueError("snrs must be positive")
        noise = NoiseSpec.none() if np.isinf(snr) else NoiseSpec.gaussian_snr(snr)
        errs = np.empty(trials)
        for t in range(trials):
            inst = measure(a, x, sel, noise, seed=(seed, i, t))
            report = robust_recover(a, inst.y)
            errs[t] = np.linalg.norm(report.x_hat - x) / x_norm
        rows.append((snr, float(errs.mean()), float(errs.max())))
    return rows
