"""Scikit-learn style estimators for recovery from unlabeled measurements.

Both estimators treat the known row matrix as the design matrix ``X`` in
``fit(X, y)``; ``y`` holds the unlabeled measurements and may be shorter
than ``X`` has rows (a row subset was observed).  The recovered signal is
exposed as ``coef_`` so the estimators compose with pipelines and
hyper-parameter search; ``predict(X)`` returns labeled measurements
``X @ coef_`` for known rows.
"""

import numpy as np
from sklearn.base import BaseEstimator

from .exact import STATUS_AMBIGUOUS, STATUS_UNIQUE, SolveConfig, recover, recover_with_pruning
from .robust import robust_recover


class UnlabeledRegression(BaseEstimator):
    """Exact recovery of a signal from noiseless shuffled measurements.

    Parameters
    ----------
    residual_tol : float
        Relative feasibility threshold for a candidate row selection.
    uniqueness_tol : float
        Infinity-norm tolerance under which two feasible solutions are the
        same signal.
    prune : bool
        Use the depth-first search with partial-residual pruning.
    first_hit : bool
        Return the first feasible candidate instead of certifying
        uniqueness by exhaustion.
    max_nodes : int or None
        Search budget; exceeding it leaves ``status_`` as
        ``"budget_exhausted"``.

    Attributes
    ----------
    coef_ : ndarray of shape (n_features,)
        Recovered signal (for an ambiguous fit, the solution of the
        lexicographically first feasible candidate).
    status_ : str
        One of ``unique``, ``ambiguous``, ``infeasible``,
        ``budget_exhausted``.
    report_ : RecoveryReport
        Full solver report (witness selections, solution classes, node
        counters).
    """

    def __init__(self, residual_tol=1e-9, uniqueness_tol=1e-6, prune=True,
                 first_hit=False, max_nodes=None):
        self.residual_tol = residual_tol
        self.uniqueness_tol = uniqueness_tol
        self.prune = prune
        self.first_hit = first_hit
        self.max_nodes = max_nodes

    def fit(self, X, y):
        config = SolveConfig(
            residual_tol=self.residual_tol,
            uniqueness_tol=self.uniqueness_tol,
            prune=self.prune,
            max_nodes=self.max_nodes,
        )
        solve = recover_with_pruning if self.prune else recover
        report = solve(X, y, config, first_hit=self.first_hit)
        self.report_ = report
        self.status_ = report.status
        self.n_features_in_ = np.asarray(X).shape[1]
        self.coef_ = None if report.x_hat is None else report.x_hat.copy()
        return self

    def predict(self, X):
        """Labeled measurements ``X @ coef_`` for known rows ``X``."""
        self._check_recovered()
        return np.asarray(X, dtype=float) @ self.coef_

    def _check_recovered(self):
        if getattr(self, "coef_", None) is None:
            raise ValueError(
                "estimator has no recovered signal; fit() first and check status_"
            )

    @property
    def is_certified_(self):
        """True when the fit found exactly one consistent signal."""
        return getattr(self, "status_", None) == STATUS_UNIQUE

    @property
    def is_ambiguous_(self):
        return getattr(self, "status_", None) == STATUS_AMBIGUOUS


class RobustUnlabeledRegression(BaseEstimator):
    """Noisy recovery: global least squares over all row selections.

    Attributes
    ----------
    coef_ : ndarray of shape (n_features,)
        Minimizer of ``||y - X[picks] @ coef||`` over ordered row picks.
    selection_ : Selection
        The winning row selection.
    residual_ : float
        Residual of the winning selection.
    runner_up_residual_ : float
        Best residual among the remaining selections (gap diagnostic).
    """

    def fit(self, X, y):
        report = robust_recover(X, y)
        self.report_ = report
        self.coef_ = report.x_hat.copy()
        self.selection_ = report.best_selection
        self.residual_ = report.best_residual
        self.runner_up_residual_ = report.runner_up_residual
        self.n_features_in_ = np.asarray(X).shape[1]
        return self

    def predict(self, X):
        """Labeled measurements ``X @ coef_`` for known rows ``X``."""
        if getattr(self, "coef_", None) is None:
            raise ValueError("estimator is not fitted")
        return np.asarray(X, dtype=float) @ self.coef_
