"""Recovery of signals from shuffled or unlabeled linear measurements.

The measurement model is ``y = S A x``: a known matrix ``A`` of candidate
measurement rows, an unknown ordered row selection ``S``, and an unknown
signal ``x``.  This package provides the exhaustive exact solver (with a
pruned search variant), a robust solver for noisy measurements, the cycle
decomposition used to analyze candidate selections, constructors for
ambiguous instances in the under-sampled regime, and a seeded experiment
harness with a CLI.
"""

from .counterexamples import (
    AmbiguousPair,
    DegenerateInstanceError,
    construct,
    construct_even,
    construct_odd,
    cyclic_concatenation,
    rank_witness_assignment,
    single_cycle_permutation,
)
from .cycles import Cycle, CycleDecomposition, cycle_ordered_form, decompose
from .estimators import RobustUnlabeledRegression, UnlabeledRegression
from .exact import (
    RecoveryReport,
    SolveConfig,
    check_nullspace_property,
    nullspace_property_defect,
    recover,
    recover_with_pruning,
)
from .experiments import ExperimentConfig, ExperimentReport, run_experiment
from .linalg import LsqResult, default_rank_tol, det, lstsq, nullspace, rank
from .robust import RobustReport, robust_recover, stability_sweep, subspace_distance
from .sampling import (
    Instance,
    NoiseSpec,
    Selection,
    apply_selection,
    enumerate_selections,
    gen_matrix,
    measure,
    random_selection,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousPair",
    "Cycle",
    "CycleDecomposition",
    "DegenerateInstanceError",
    "ExperimentConfig",
    "ExperimentReport",
    "Instance",
    "LsqResult",
    "NoiseSpec",
    "RecoveryReport",
    "RobustReport",
    "RobustUnlabeledRegression",
    "Selection",
    "SolveConfig",
    "UnlabeledRegression",
    "apply_selection",
    "check_nullspace_property",
    "construct",
    "construct_even",
    "construct_odd",
    "cycle_ordered_form",
    "cyclic_concatenation",
    "decompose",
    "default_rank_tol",
    "det",
    "enumerate_selections",
    "gen_matrix",
    "lstsq",
    "measure",
    "nullspace",
    "nullspace_property_defect",
    "random_selection",
    "rank",
    "rank_witness_assignment",
    "recover",
    "recover_with_pruning",
    "robust_recover",
    "run_experiment",
    "single_cycle_permutation",
    "stability_sweep",
    "subspace_distance",
]
