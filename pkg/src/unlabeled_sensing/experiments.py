"""Seeded experiment campaigns over the solvers and constructors.

Every campaign is a deterministic function of its config: per-trial
generators are seeded as ``(master_seed, indices...)`` through the package
RNG policy (see ``sampling``), so any single trial can be reproduced in
isolation and trials may run in any order or in parallel.  Set the
``US_THREADS`` environment variable to run trials on a process pool;
records are keyed by trial index, so aggregation is order-independent.

Wall-clock timing and timestamps live only in the report's ``meta`` block;
everything else in a report is byte-reproducible.
"""

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import partial

import numpy as np

from .counterexamples import DegenerateInstanceError, construct
from .exact import (
    STATUS_UNIQUE,
    SolveConfig,
    nullspace_property_defect,
    recover,
    recover_with_pruning,
)
from .robust import robust_recover
from .sampling import NoiseSpec, gen_matrix, measure, random_selection, rng_from

KINDS = ("montecarlo_exact", "snr_sweep", "converse", "nullspace_check")

SUCCESS_TOL = 1e-8  # success: max-abs error <= SUCCESS_TOL * (1 + ||x||)


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    k: int
    n: int
    m: int
    trials: int
    seed: int
    dist: str = "gaussian"
    residual_tol: float = 1e-9
    uniqueness_tol: float = 1e-6
    prune: bool = True
    max_nodes: int = None
    rank_tol: float = 1e-9
    snrs: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 1 <= self.n <= self.m:
            raise ValueError(f"need 1 <= n <= m, got n={self.n}, m={self.m}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.kind == "converse" and (self.n >= 2 * self.k or self.k < 2):
            raise ValueError("converse runs need k >= 2 and n < 2k")
        if self.kind == "nullspace_check" and self.n < 2 * self.k:
            raise ValueError("nullspace_check needs n >= 2k")
        if self.kind == "snr_sweep":
            snrs = tuple(float(s) for s in self.snrs)
            if not snrs:
                raise ValueError("snr_sweep needs a nonempty snrs list")
            if any(b <= a for a, b in zip(snrs, snrs[1:])):
                raise ValueError("snrs must be strictly ascending")
            object.__setattr__(self, "snrs", snrs)

    def solve_config(self):
        return SolveConfig(
            residual_tol=self.residual_tol,
            uniqueness_tol=self.uniqueness_tol,
            prune=self.prune,
            max_nodes=self.max_nodes,
        )


@dataclass
class ExperimentReport:
    kind: str
    config: dict
    trials: list
    aggregates: dict
    elapsed_s: float

    def to_payload(self):
        return {
            "kind": self.kind,
            "config": self.config,
            "trials": self.trials,
            "aggregates": self.aggregates,
            "meta": {"elapsed_s": self.elapsed_s},
        }


def random_signal(k, seed):
    """Random direction with log-uniform norm in [0.1, 10]."""
    rng = rng_from(seed)
    v = rng.standard_normal(k)
    v /= np.linalg.norm(v)
    return v * 10.0 ** rng.uniform(-1.0, 1.0)


def _exact_trial(cfg, trial):
    a = gen_matrix(cfg.m, cfg.k, cfg.dist, seed=(cfg.seed, trial, 0))
    x = random_signal(cfg.k, seed=(cfg.seed, trial, 1))
    sel = random_selection(cfg.m, cfg.n, seed=rng_from(cfg.seed, trial, 2))
    inst = measure(a, x, sel)
    solve = recover_with_pruning if cfg.prune else recover
    report = solve(a, inst.y, cfg.solve_config())
    if report.x_hat is None:
        max_abs_err = None
        success = False
    else:
        max_abs_err = float(np.max(np.abs(report.x_hat - x)))
        success = report.status == STATUS_UNIQUE and max_abs_err <= SUCCESS_TOL * (
            1.0 + np.linalg.norm(x)
        )
    return {
        "trial": trial,
        "status": report.status,
        "max_abs_err": max_abs_err,
        "success": bool(success),
        "nodes_explored": report.nodes_explored,
        "nodes_pruned": report.nodes_pruned,
    }


def _converse_trial(cfg, trial):
    b = gen_matrix(cfg.n, cfg.k, cfg.dist, seed=(cfg.seed, trial))
    record = {"trial": trial, "degenerate": False, "residual": None, "separation": None}
    try:
        pair = construct(b)
    except DegenerateInstanceError:
        record["degenerate"] = True
        return record
    scale = 1.0 + float(np.linalg.norm(b @ pair.x))
    record["residual"] = pair.residual
    record["separation"] = pair.separation
    record["valid"] = bool(pair.residual <= 1e-8 * scale and pair.separation >= 0.5)
    return record


def _snr_trial(cfg, item):
    snr_index, trial = item
    snr = cfg.snrs[snr_index]
    a = gen_matrix(cfg.m, cfg.k, cfg.dist, seed=(cfg.seed, 0))
    x = random_signal(cfg.k, seed=(cfg.seed, 1))
    sel = random_selection(cfg.m, cfg.n, seed=rng_from(cfg.seed, 2))
    noise = NoiseSpec.none() if np.isinf(snr) else NoiseSpec.gaussian_snr(snr)
    inst = measure(a, x, sel, noise, seed=(cfg.seed, 3, snr_index, trial))
    report = robust_recover(a, inst.y)
    rel_err = float(np.linalg.norm(report.x_hat - x) / np.linalg.norm(x))
    return {"snr": snr, "trial": trial, "rel_err": rel_err}


def _nullspace_trial(cfg, trial):
    a = gen_matrix(cfg.m, cfg.k, cfg.dist, seed=(cfg.seed, trial))
    defect, pairs = nullspace_property_defect(a, cfg.n, cfg.rank_tol)
    return {
        "trial": trial,
        "max_defect": float(defect),
        "pairs_checked": pairs,
        "passed": bool(defect <= 10.0 * cfg.rank_tol),
    }


_TRIAL_FNS = {
    "montecarlo_exact": _exact_trial,
    "snr_sweep": _snr_trial,
    "converse": _converse_trial,
    "nullspace_check": _nullspace_trial,
}


def _run_item(cfg, item):
    return _TRIAL_FNS[cfg.kind](cfg, item)


def _worker_count():
    raw = os.environ.get("US_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Run a campaign; the report (minus ``meta``) is reproducible byte-for-byte."""
    start = time.perf_counter()
    if cfg.kind == "snr_sweep":
        items = [(i, t) for i in range(len(cfg.snrs)) for t in range(cfg.trials)]
    else:
        items = list(range(cfg.trials))

    workers = _worker_count()
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(partial(_run_item, cfg), items))
    else:
        records = [_run_item(cfg, item) for item in items]

    aggregates = _aggregate(cfg, records)
    elapsed = time.perf_counter() - start
    return ExperimentReport(
        kind=cfg.kind,
        config=_config_dict(cfg),
        trials=records,
        aggregates=aggregates,
        elapsed_s=elapsed,
    )


def _config_dict(cfg):
    d = asdict(cfg)
    d["snrs"] = list(cfg.snrs)
    return d


def _aggregate(cfg, records):
    if cfg.kind == "montecarlo_exact":
        successes = sum(r["success"] for r in records)
        errs = [r["max_abs_err"] for r in records if r["max_abs_err"] is not None]
        return {
            "trials": len(records),
            "successes": successes,
            "success_rate": successes / len(records),
            "mean_max_abs_err": float(np.mean(errs)) if errs else None,
            "worst_max_abs_err": float(np.max(errs)) if errs else None,
        }
    if cfg.kind == "converse":
        degenerate = sum(r["degenerate"] for r in records)
        valid = sum(r.get("valid", False) for r in records)
        residuals = [r["residual"] for r in records if r["residual"] is not None]
        separations = [r["separation"] for r in records if r["separation"] is not None]
        return {
            "trials": len(records),
            "valid_pairs": valid,
            "degenerate_draws": degenerate,
            "success_rate": valid / len(records),
            "max_residual": float(np.max(residuals)) if residuals else None,
            "min_separation": float(np.min(separations)) if separations else None,
        }
    if cfg.kind == "snr_sweep":
        per_snr = []
        for snr in cfg.snrs:
            errs = [r["rel_err"] for r in records if r["snr"] == snr]
            per_snr.append(
                {
                    "snr": snr,
                    "mean_rel_err": float(np.mean(errs)),
                    "max_rel_err": float(np.max(errs)),
                }
            )
        return {"per_snr": per_snr, "trials_per_snr": cfg.trials}
    # nullspace_check
    defects = [r["max_defect"] for r in records]
    return {
        "trials": len(records),
        "all_passed": bool(all(r["passed"] for r in records)),
        "max_defect": float(np.max(defects)),
        "success_rate": sum(r["passed"] for r in records) / len(records),
    }
