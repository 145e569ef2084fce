"""Independent oracles used to freeze expected values.

Everything here deliberately avoids the package's own linear algebra:
exact rank and determinant run over ``fractions.Fraction`` so there is no
tolerance to tune, and least-squares optimality is checked against random
probe vectors rather than another factorization.
"""

from fractions import Fraction

import numpy as np


def _to_fractions(rows):
    return [[Fraction(v).limit_denominator(10**12) for v in row] for row in rows]


def exact_rank(rows):
    """Rank over the rationals by fraction-exact Gaussian elimination."""
    m = _to_fractions(rows)
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    row = 0
    for col in range(n_cols):
        pivot = next((r for r in range(row, n_rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        for r in range(n_rows):
            if r != row and m[r][col] != 0:
                factor = m[r][col] / m[row][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        rank += 1
        row += 1
        if row == n_rows:
            break
    return rank


def exact_det(rows):
    """Determinant over the rationals by fraction-exact elimination."""
    m = _to_fractions(rows)
    n = len(m)
    assert all(len(r) == n for r in m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] / m[col][col]
            m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return det


def probe_suboptimality(a, b, solution, n_probes=1000, seed=0, scale=1.0):
    """Largest amount by which a random probe beats the claimed LS solution.

    Positive values mean some probe vector achieved a smaller residual than
    ``solution``; a correct least-squares solution keeps this <= ~0.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    base = np.linalg.norm(a @ solution - b)
    rng = np.random.default_rng(seed)
    probes = solution[None, :] + scale * rng.standard_normal((n_probes, a.shape[1]))
    residuals = np.linalg.norm(probes @ a.T - b[None, :], axis=1)
    return float(base - residuals.min())


def permutation_parity(picks):
    """+1 for even, -1 for odd permutations (cycle-count argument)."""
    seen = set()
    parity = 1
    for start in range(len(picks)):
        if start in seen:
            continue
        length = 0
        cur = start
        while cur not in seen:
            seen.add(cur)
            cur = picks[cur]
            length += 1
        if length % 2 == 0:
            parity = -parity
    return parity
