"""Exact recovery from noiseless unlabeled measurements.

Given a known matrix ``a`` and a measurement vector ``y`` whose entries are
inner products of an unknown signal with some unknown ordered subset of the
rows of ``a``, enumerate candidate row selections and keep those whose
overdetermined system ``a[picks] @ x = y`` is consistent.  The default mode
enumerates exhaustively and certifies whether the consistent solutions
collapse to a single signal; ``first_hit=True`` instead stops at the first
consistent candidate.

``recover_with_pruning`` explores the same candidates as a depth-first tree
over partial selections.  Appending a row to a least-squares system can only
grow the residual, so a partial candidate whose residual already exceeds the
feasibility threshold cannot complete and its subtree is cut.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ._validation import check_matrix, check_vector
from .linalg import default_rank_tol, lstsq, nullspace
from .sampling import Selection, enumerate_selections, random_selection

STATUS_UNIQUE = "unique"
STATUS_AMBIGUOUS = "ambiguous"
STATUS_INFEASIBLE = "infeasible"
STATUS_BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class SolveConfig:
    """Tolerances and limits for the exact solver.

    residual_tol is relative: a candidate is feasible when its residual is
    at most ``residual_tol * (1 + ||y||)``; the +1 keeps the threshold
    meaningful for tiny measurements.  Two feasible solutions within
    ``uniqueness_tol`` in the infinity norm count as the same signal.
    """

    residual_tol: float = 1e-9
    uniqueness_tol: float = 1e-6
    prune: bool = True
    max_nodes: int = None

    def __post_init__(self):
        if not self.residual_tol > 0:
            raise ValueError("residual_tol must be positive")
        if not self.uniqueness_tol > 0:
            raise ValueError("uniqueness_tol must be positive")
        if self.max_nodes is not None and self.max_nodes < 1:
            raise ValueError("max_nodes must be positive when given")


@dataclass
class RecoveryReport:
    """Outcome of a solve.

    ``x_hat`` is present for unique/ambiguous outcomes (for ambiguous it is
    the solution of the lexicographically first feasible candidate);
    ``distinct_solutions`` holds one representative per solution class and
    ``witness_selections`` every feasible selection, in discovery order.
    """

    status: str
    x_hat: np.ndarray = None
    witness_selections: list = field(default_factory=list)
    distinct_solutions: list = field(default_factory=list)
    nodes_explored: int = 0
    nodes_pruned: int = 0

    def to_dict(self):
        return {
            "status": self.status,
            "x_hat": None if self.x_hat is None else [float(v) for v in self.x_hat],
            "distinct_solutions": [[float(v) for v in s] for s in self.distinct_solutions],
            "witness_selections": [list(s.picks) for s in self.witness_selections],
            "nodes_explored": self.nodes_explored,
            "nodes_pruned": self.nodes_pruned,
        }


def _check_problem(a, y):
    a = check_matrix(a, "a")
    y = check_vector(y, name="y")
    m, k = a.shape
    n = y.shape[0]
    if n > m:
        raise ValueError(f"measurement has {n} entries but the matrix has only {m} rows")
    if k > n:
        raise ValueError(
            f"candidates would be underdetermined: {k} unknowns, {n} measurements"
        )
    return a, y, m, n, k


def _zero_measurement_report(k):
    # a zero measurement is consistent with every selection and forces x = 0
    return RecoveryReport(
        status=STATUS_UNIQUE,
        x_hat=np.zeros(k),
        witness_selections=[],
        distinct_solutions=[np.zeros(k)],
    )


class _SolutionPool:
    """Merge feasible solutions into classes within an infinity-norm tolerance."""

    def __init__(self, tol):
        self.tol = tol
        self.reps = []
        self.witnesses = []

    def add(self, solution, selection):
        self.witnesses.append(selection)
        for rep in self.reps:
            if np.max(np.abs(rep - solution)) <= self.tol:
                return
        self.reps.append(solution)

    def finish(self, nodes_explored, nodes_pruned, exhausted=False):
        if exhausted:
            status = STATUS_BUDGET_EXHAUSTED
            x_hat = None
        elif not self.reps:
            status = STATUS_INFEASIBLE
            x_hat = None
        elif len(self.reps) == 1:
            status, x_hat = STATUS_UNIQUE, self.reps[0]
        else:
            status, x_hat = STATUS_AMBIGUOUS, self.reps[0]
        return RecoveryReport(
            status=status,
            x_hat=x_hat,
            witness_selections=self.witnesses,
            distinct_solutions=list(self.reps),
            nodes_explored=nodes_explored,
            nodes_pruned=nodes_pruned,
        )


def recover(a, y, config=None, *, first_hit=False):
    """Exhaustive recovery over all candidate selections.

    Parameters
    ----------
    a : array-like, (m, k)
        The known matrix whose rows generated the measurements.
    y : array-like, (n,)
        Unlabeled measurement vector, n <= m.
    config : SolveConfig, optional
    first_hit : bool
        Stop at the first feasible candidate instead of certifying
        uniqueness by exhaustion.

    Returns
    -------
    RecoveryReport
    """
    config = config or SolveConfig()
    a, y, m, n, k = _check_problem(a, y)
    if np.linalg.norm(y) == 0.0:
        return _zero_measurement_report(k)

    threshold = config.residual_tol * (1.0 + np.linalg.norm(y))
    pool = _SolutionPool(config.uniqueness_tol)
    explored = 0
    for sel in enumerate_selections(m, n):
        if config.max_nodes is not None and explored >= config.max_nodes:
            return pool.finish(explored, 0, exhausted=True)
        explored += 1
        result = lstsq(a[list(sel.picks)], y)
        if result.residual_norm <= threshold:
            pool.add(result.solution, sel)
            if first_hit:
                break
    return pool.finish(explored, 0)


def recover_with_pruning(a, y, config=None, *, first_hit=False):
    """Depth-first variant of ``recover`` that cuts hopeless partial candidates.

    Produces the same status, solution classes and witnesses as ``recover``
    (pruning only discards candidates that could never become feasible), and
    additionally reports how many subtrees were cut.  Pruning starts once a
    partial candidate has more rows than unknowns; below that depth the
    partial system is generically consistent and testing it is wasted work.
    """
    config = config or SolveConfig()
    a, y, m, n, k = _check_problem(a, y)
    if np.linalg.norm(y) == 0.0:
        return _zero_measurement_report(k)

    threshold = config.residual_tol * (1.0 + np.linalg.norm(y))
    pool = _SolutionPool(config.uniqueness_tol)
    explored = 0
    pruned = 0
    exhausted = False
    rows = np.empty((n, k))
    used = [False] * m
    prefix = []
    do_prune = config.prune

    def materialize(last_row):
        return Selection(m, tuple(prefix) + (last_row,))

    def dfs(depth):
        nonlocal explored, pruned, exhausted
        for row_id in range(m):
            if used[row_id]:
                continue
            if config.max_nodes is not None and explored >= config.max_nodes:
                exhausted = True
                return True
            explored += 1
            rows[depth] = a[row_id]
            j = depth + 1
            if j == n:
                result = lstsq(rows, y)
                if result.residual_norm <= threshold:
                    pool.add(result.solution, materialize(row_id))
                    if first_hit:
                        return True
                continue
            if do_prune and j > k:
                partial = lstsq(rows[:j], y[:j])
                if partial.residual_norm > threshold:
                    pruned += 1
                    continue
            used[row_id] = True
            prefix.append(row_id)
            stop = dfs(j)
            prefix.pop()
            used[row_id] = False
            if stop:
                return True
        return False

    dfs(0)
    return pool.finish(explored, pruned, exhausted=exhausted)


def nullspace_property_defect(a, n, rank_tol=None, max_pairs=None, seed=0):
    """Worst violation of the paired-kernel property over selection pairs.

    For ordered selections S1, S2 of size ``n``, every unit vector
    ``z = (z1; z2)`` in the kernel of ``[a[S1], a[S2]]`` should satisfy
    ``z1 + z2 = 0`` whenever ``n >= 2k``.  Returns ``(max_defect, n_pairs)``
    where the defect of a kernel vector is ``||z1 + z2||``.  When the number
    of ordered pairs exceeds ``max_pairs`` a seeded uniform sample of pairs
    is checked instead of the full product.
    """
    a = check_matrix(a, "a")
    m, k = a.shape
    if n < 2 * k:
        raise ValueError(f"property requires n >= 2k, got n={n}, k={k}")
    if n > m:
        raise ValueError(f"need n <= m, got n={n}, m={m}")
    if rank_tol is None:
        rank_tol = default_rank_tol(a)

    total = math.perm(m, n) ** 2
    if max_pairs is not None and total > max_pairs:
        rng = np.random.default_rng(np.random.SeedSequence([seed]))
        pairs = (
            (random_selection(m, n, rng), random_selection(m, n, rng))
            for _ in range(max_pairs)
        )
        n_pairs = max_pairs
    else:
        pairs = (
            (s1, s2)
            for s1 in enumerate_selections(m, n)
            for s2 in enumerate_selections(m, n)
        )
        n_pairs = total

    worst = 0.0
    for s1, s2 in pairs:
        stacked = np.hstack([a[list(s1.picks)], a[list(s2.picks)]])
        kernel = nullspace(stacked, rank_tol)
        for z in kernel.T:
            worst = max(worst, float(np.linalg.norm(z[:k] + z[k:])))
    return worst, n_pairs


def check_nullspace_property(a, n, rank_tol=None, max_pairs=None, seed=0):
    """True when every kernel vector over selection pairs splits as (z, -z).

    The pass threshold is ``10 * rank_tol`` applied to unit-norm kernel
    vectors; see ``nullspace_property_defect`` for the scan itself.
    """
    a = check_matrix(a, "a")
    if rank_tol is None:
        rank_tol = default_rank_tol(a)
    worst, _ = nullspace_property_defect(a, n, rank_tol, max_pairs=max_pairs, seed=seed)
    return worst <= 10.0 * rank_tol
