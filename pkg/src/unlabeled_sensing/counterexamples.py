"""Constructive ambiguity for the under-sampled regime.

When the number of measurements is below twice the number of unknowns
(and there is more than one unknown), a single cyclic-shift permutation is
enough to defeat recovery: these constructors manufacture, for any such
matrix, two distinct signals whose measurements are permutations of each
other.  All constructions reduce to a base case on a leading block of
columns: stack the matrix next to its cyclically shifted copy, delete one
or two columns to make the system square, and solve for the remaining
signal entries.  Signals for narrower measurement counts are zero-padded.

Degenerate draws (singular reduced systems, vanishing pivot gaps) have
probability zero for matrices with continuous i.i.d. entries; they raise
``DegenerateInstanceError`` instead of being retried internally so callers
can observe degeneracy rates.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import check_matrix
from .sampling import Selection

RESIDUAL_BOUND = 1e-8


class DegenerateInstanceError(RuntimeError):
    """A measure-zero draw broke the construction (singular system or zero gap)."""


@dataclass
class AmbiguousPair:
    """Distinct signals x, x_hat with ``b @ x`` a permutation of ``b @ x_hat``.

    ``residual`` is the verified norm of ``b @ x - b[pi] @ x_hat``;
    ``separation`` the infinity-norm gap between the signals (the
    constructions pin one coordinate gap to exactly 1).
    """

    x: np.ndarray
    x_hat: np.ndarray
    pi: Selection
    residual: float
    separation: float

    def to_dict(self):
        return {
            "x": [float(v) for v in self.x],
            "x_hat": [float(v) for v in self.x_hat],
            "pi": list(self.pi.picks),
            "residual": self.residual,
            "separation": self.separation,
        }


def single_cycle_permutation(n):
    """The cyclic shift on n rows: row i of the permuted matrix is row i+1 mod n."""
    if n < 2:
        raise ValueError("a single-cycle permutation needs n >= 2")
    return Selection(n, tuple(range(1, n)) + (0,))


def cyclic_concatenation(b):
    """Stack ``b`` beside its cyclically shifted copy: ``[b, b[shift]]`` (n x 2k)."""
    b = check_matrix(b, "b")
    pi = single_cycle_permutation(b.shape[0])
    return np.hstack([b, pi.apply(b)])


def _finish(b, x, x_hat, pi):
    residual = float(np.linalg.norm(b @ x - pi.apply(b) @ x_hat))
    scale = 1.0 + np.linalg.norm(b @ x)
    if residual > RESIDUAL_BOUND * scale:
        raise DegenerateInstanceError(
            f"degenerate instance: verification residual {residual:.3e} exceeds tolerance"
        )
    separation = float(np.max(np.abs(x - x_hat)))
    return AmbiguousPair(x=x, x_hat=x_hat, pi=pi, residual=residual, separation=separation)


def _solve_square(g, rhs):
    try:
        sol = np.linalg.solve(g, rhs)
    except np.linalg.LinAlgError as exc:
        raise DegenerateInstanceError(f"degenerate instance: {exc}") from None
    if not np.all(np.isfinite(sol)):
        raise DegenerateInstanceError("degenerate instance: non-finite solve")
    return sol


def construct_even(b):
    """Ambiguous pair for an even number of measurements below twice the unknowns.

    Reduces to the tight case on the first n/2 + 1 columns: with the cyclic
    shift, delete the two columns tied to the last base coordinate from the
    stacked matrix, pin that coordinate to 0 in one signal and 1 in the
    other, and solve the resulting square system for everything else.
    Trailing coordinates beyond the base block are zero in both signals.
    """
    b = check_matrix(b, "b")
    n, k = b.shape
    if n % 2 != 0:
        raise ValueError(f"even constructor needs an even row count, got {n}")
    if not (k >= 2 and 2 <= n < 2 * k):
        raise ValueError(f"needs k >= 2 and 2 <= rows < 2k, got rows={n}, k={k}")

    kp = n // 2 + 1
    head = b[:, :kp]
    g = cyclic_concatenation(head)
    g2 = g[:, 2 * kp - 1]
    keep = [c for c in range(2 * kp) if c not in (kp - 1, 2 * kp - 1)]
    g_reduced = g[:, keep]

    # g_reduced @ [-x_head; x_hat_head] = -g2  pins x[kp-1] = 0, x_hat[kp-1] = 1
    z = _solve_square(g_reduced, -g2)
    if np.linalg.norm(z) == 0.0:
        raise DegenerateInstanceError("degenerate instance: trivial kernel solution")
    x = np.zeros(k)
    x_hat = np.zeros(k)
    x[: kp - 1] = -z[: kp - 1]
    x_hat[: kp - 1] = z[kp - 1 :]
    x_hat[kp - 1] = 1.0
    return _finish(b, x, x_hat, single_cycle_permutation(n))


def construct_odd(b):
    """Ambiguous pair for an odd number of measurements below twice the unknowns.

    Reduces to the tight case on the first (n+1)/2 columns: drop the last
    column of the stacked cyclic system, solve the square system for its
    coefficient vector t, and read one signal off the leading entries of t
    and the other off the trailing entries (negated, with the pinned
    coordinate set to 1).  The pair is rescaled so the gap in the pinned
    coordinate is exactly 1; a vanishing gap is a degenerate draw.
    """
    b = check_matrix(b, "b")
    n, k = b.shape
    if n % 2 != 1:
        raise ValueError(f"odd constructor needs an odd row count, got {n}")
    if not (k >= 2 and 2 <= n < 2 * k):
        raise ValueError(f"needs k >= 2 and 2 <= rows < 2k, got rows={n}, k={k}")

    kp = (n + 1) // 2
    head = b[:, :kp]
    g = cyclic_concatenation(head)
    g_reduced, last_col = g[:, : 2 * kp - 1], g[:, 2 * kp - 1]

    t = _solve_square(g_reduced, last_col)
    delta = t[kp - 1] - 1.0
    if abs(delta) <= 1e-10:
        raise DegenerateInstanceError("degenerate instance: vanishing coordinate gap")

    x = np.zeros(k)
    x_hat = np.zeros(k)
    x[:kp] = t[:kp]
    x_hat[: kp - 1] = -t[kp : 2 * kp - 1]
    x_hat[kp - 1] = 1.0
    # rescale so the pinned-coordinate gap is exactly 1 (pairs are scale-invariant)
    x /= delta
    x_hat /= delta
    return _finish(b, x, x_hat, single_cycle_permutation(n))


def construct(b):
    """Parity dispatch to ``construct_even`` / ``construct_odd``."""
    b = check_matrix(b, "b")
    if b.shape[0] % 2 == 0:
        return construct_even(b)
    return construct_odd(b)


def rank_witness_assignment(k):
    """Explicit (2k-1)-by-k matrix whose reduced cyclic system is a permutation matrix.

    Rows are standard basis vectors interleaved with zero rows: row 1 is
    e_k, even rows are zero, and odd row i is e_((i-1)/2) (1-based).  The
    matrix witnesses that the reduced system's determinant is a nonzero
    polynomial, hence nonzero for almost every draw.
    """
    if k < 2:
        raise ValueError("witness assignment needs k >= 2")
    rows = np.zeros((2 * k - 1, k))
    rows[0, k - 1] = 1.0
    for i in range(3, 2 * k, 2):  # 1-based odd rows i >= 3
        rows[i - 1, (i - 1) // 2 - 1] = 1.0
    return rows
