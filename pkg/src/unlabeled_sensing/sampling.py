"""Problem instances: sensing matrices, selections, and (noisy) measurements.

Randomness policy: every generator takes an explicit 64-bit seed and is a
pure function of (seed, parameters).  Generators use numpy's PCG64 via
``numpy.random.default_rng``; derived streams are built by seeding with an
entropy tuple ``(seed, index, ...)`` through ``numpy.random.SeedSequence``,
so any sub-stream can be reproduced in isolation.
"""

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from ._validation import check_matrix, check_vector

_DISTRIBUTIONS = ("gaussian", "uniform")


def rng_from(*entropy):
    """PCG64 generator seeded from an entropy tuple (master seed plus indices).

    Accepts ints or a single tuple/list of ints, so derived streams can be
    addressed as e.g. ``rng_from(seed, trial_index)``.
    """
    if len(entropy) == 1 and isinstance(entropy[0], (tuple, list)):
        entropy = tuple(entropy[0])
    return np.random.default_rng(np.random.SeedSequence([int(e) for e in entropy]))


@dataclass(frozen=True)
class Selection:
    """An ordered choice of ``len(picks)`` distinct rows out of ``source_rows``.

    Represents both a selection matrix (picks fewer rows than available) and,
    when ``len(picks) == source_rows``, a permutation.
    """

    source_rows: int
    picks: tuple

    def __post_init__(self):
        picks = tuple(int(p) for p in self.picks)
        object.__setattr__(self, "picks", picks)
        if self.source_rows < 1:
            raise ValueError("source_rows must be >= 1")
        if not 1 <= len(picks) <= self.source_rows:
            raise ValueError(f"need 1..{self.source_rows} picks, got {len(picks)}")
        if len(set(picks)) != len(picks):
            raise ValueError(f"picks must be distinct, got {picks}")
        if any(p < 0 or p >= self.source_rows for p in picks):
            raise ValueError(f"picks must lie in [0, {self.source_rows}), got {picks}")

    def __len__(self):
        return len(self.picks)

    @property
    def is_permutation(self):
        return len(self.picks) == self.source_rows

    @classmethod
    def identity(cls, m, n=None):
        """The selection keeping the first ``n`` (default all) rows in order."""
        return cls(m, tuple(range(m if n is None else n)))

    def apply(self, a):
        """Pick and reorder rows of ``a``: row i of the result is ``a[picks[i]]``."""
        a = check_matrix(a, "a")
        if a.shape[0] != self.source_rows:
            raise ValueError(
                f"selection expects {self.source_rows} source rows, matrix has {a.shape[0]}"
            )
        return a[list(self.picks)]

    def compose(self, other):
        """Selection equivalent to applying ``other`` first, then ``self``.

        ``self.compose(other).apply(a) == self.apply(other.apply(a))``;
        requires ``self.source_rows == len(other)``.
        """
        if self.source_rows != len(other.picks):
            raise ValueError("composition needs self.source_rows == len(other.picks)")
        return Selection(other.source_rows, tuple(other.picks[p] for p in self.picks))

    def inverse(self):
        """Inverse permutation; only defined when this selection is a permutation."""
        if not self.is_permutation:
            raise ValueError("only permutations are invertible")
        inv = [0] * len(self.picks)
        for i, p in enumerate(self.picks):
            inv[p] = i
        return Selection(self.source_rows, tuple(inv))

    def matrix(self):
        """The dense 0/1 selection matrix of shape (len(picks), source_rows)."""
        s = np.zeros((len(self.picks), self.source_rows))
        s[np.arange(len(self.picks)), list(self.picks)] = 1.0
        return s


@dataclass(frozen=True)
class NoiseSpec:
    """Additive-noise model for a measurement: none, or gaussian at an exact SNR."""

    kind: str = "none"
    snr: float = None

    def __post_init__(self):
        if self.kind not in ("none", "gaussian_snr"):
            raise ValueError(f"unknown noise kind {self.kind!r}")
        if self.kind == "gaussian_snr":
            if self.snr is None or not self.snr > 0:
                raise ValueError("gaussian_snr requires a positive snr")

    @classmethod
    def none(cls):
        return cls("none")

    @classmethod
    def gaussian_snr(cls, snr):
        return cls("gaussian_snr", float(snr))


@dataclass(frozen=True, eq=False)
class Instance:
    """A complete problem: known matrix, hidden signal/selection, observed measurement."""

    a: np.ndarray
    x_true: np.ndarray
    selection: Selection
    noise: np.ndarray
    y: np.ndarray

    @property
    def b(self):
        """The (hidden) row-selected sensing matrix the measurement came from."""
        return self.selection.apply(self.a)


def gen_matrix(m, k, dist="gaussian", seed=0):
    """Random m-by-k matrix with i.i.d. entries, reproducible from the seed.

    ``dist`` is ``"gaussian"`` (standard normal) or ``"uniform"`` (on (-1, 1)).
    """
    if m < 1 or k < 1:
        raise ValueError("matrix dimensions must be >= 1")
    if dist not in _DISTRIBUTIONS:
        raise ValueError(f"dist must be one of {_DISTRIBUTIONS}, got {dist!r}")
    rng = rng_from(seed)
    if dist == "gaussian":
        return rng.standard_normal((m, k))
    return rng.uniform(-1.0, 1.0, size=(m, k))


def apply_selection(sel, a):
    """Functional form of ``Selection.apply``."""
    return sel.apply(a)


def random_selection(m, n, seed=0):
    """Uniformly random ordered selection of n distinct rows out of m."""
    if not 1 <= n <= m:
        raise ValueError(f"need 1 <= n <= m, got n={n}, m={m}")
    rng = seed if isinstance(seed, np.random.Generator) else rng_from(seed)
    picks = tuple(int(i) for i in rng.permutation(m)[:n])
    return Selection(m, picks)


def measure(a, x, sel, noise=NoiseSpec.none(), seed=0):
    """Build a measurement ``y = sel.apply(a) @ x + w`` with the requested noise.

    For ``gaussian_snr`` the drawn noise is rescaled so that
    ``||B x||^2 / ||w||^2`` equals the requested SNR exactly, which requires
    ``B x != 0``.
    """
    a = check_matrix(a, "a")
    x = check_vector(x, length=a.shape[1], name="x")
    b = sel.apply(a)
    y_clean = b @ x
    n = len(sel)
    if noise.kind == "none":
        w = np.zeros(n)
    else:
        signal = np.linalg.norm(y_clean)
        if signal == 0.0:
            raise ValueError("SNR is undefined for a zero noiseless measurement")
        w = rng_from(seed).standard_normal(n)
        w *= signal / (np.sqrt(noise.snr) * np.linalg.norm(w))
    return Instance(a=a, x_true=x, selection=sel, noise=w, y=y_clean + w)


def enumerate_selections(m, n):
    """Yield all m!/(m-n)! ordered selections of n rows, in lexicographic pick order."""
    if not 1 <= n <= m:
        raise ValueError(f"need 1 <= n <= m, got n={n}, m={m}")
    for picks in permutations(range(m), n):
        yield Selection(m, picks)
