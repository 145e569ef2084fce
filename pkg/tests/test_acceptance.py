"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines; every tolerance is pinned here, nothing is deferred to calibration.
"""

import itertools
import json
from contextlib import contextmanager

import numpy as np
import pytest
from click.testing import CliRunner

from unlabeled_sensing.cli import main as cli_main
from unlabeled_sensing.counterexamples import construct, cyclic_concatenation, rank_witness_assignment
from unlabeled_sensing.cycles import decompose
from unlabeled_sensing.exact import (
    SolveConfig,
    nullspace_property_defect,
    recover,
    recover_with_pruning,
)
from unlabeled_sensing.experiments import ExperimentConfig, run_experiment
from unlabeled_sensing.linalg import det, lstsq, rank
from unlabeled_sensing.robust import stability_sweep
from unlabeled_sensing.sampling import Selection, gen_matrix, random_selection


@contextmanager
def criterion(number, description):
    try:
        yield
    except Exception:
        print(f"FAIL criterion {number}: {description}")
        raise
    print(f"PASS criterion {number}: {description}")


GOLDEN_3X2 = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 2.0]])
GOLDEN_4X2 = np.vstack([GOLDEN_3X2, [1.0, -1.0]])


def test_criterion_01_exact_recovery_at_twice_oversampling():
    with criterion(1, "exact recovery, m = n = 2k, k in {1,2,3}, 200 trials each"):
        for k in (1, 2, 3):
            cfg = ExperimentConfig(
                kind="montecarlo_exact", k=k, n=2 * k, m=2 * k, trials=200, seed=k
            )
            report = run_experiment(cfg)
            assert report.aggregates["success_rate"] == 1.0, f"k={k}"
            assert report.aggregates["worst_max_abs_err"] is not None


def test_criterion_02_exact_recovery_oversampled_source():
    with criterion(2, "exact recovery with extra source rows, k=2 n=4 m=6, 100 trials"):
        cfg = ExperimentConfig(
            kind="montecarlo_exact", k=2, n=4, m=6, trials=100, seed=22, prune=True
        )
        report = run_experiment(cfg)
        assert report.aggregates["success_rate"] == 1.0


def test_criterion_03_nullspace_pairing_property():
    with criterion(3, "kernel vectors over all 24^2 selection pairs split as (z, -z), 20 seeds"):
        for seed in range(20):
            a = gen_matrix(4, 2, "gaussian", seed=seed)
            defect, pairs = nullspace_property_defect(a, 4, rank_tol=1e-9)
            assert pairs == 24**2
            assert defect <= 1e-8, f"seed={seed}, defect={defect}"


def test_criterion_04_converse_constructions_everywhere_below_2k():
    with criterion(4, "verified ambiguous pair on 100/100 draws for every 2<=k<=4, 2<=n<2k"):
        for k in (2, 3, 4):
            for n in range(2, 2 * k):
                for draw in range(100):
                    b = gen_matrix(n, k, "gaussian", seed=(k, n, draw))
                    pair = construct(b)
                    scale = 1.0 + np.linalg.norm(b @ pair.x)
                    assert pair.residual <= 1e-8 * scale, (k, n, draw)
                    assert pair.separation >= 0.5, (k, n, draw)
        # the solver itself must see the ambiguity at k=2, n=3
        b = gen_matrix(3, 2, "gaussian", seed=(2, 3, 0))
        pair = construct(b)
        report = recover(b, b @ pair.x)
        assert report.status == "ambiguous"
        assert any(np.max(np.abs(s - pair.x)) <= 1e-6 for s in report.distinct_solutions)
        assert any(np.max(np.abs(s - pair.x_hat)) <= 1e-6 for s in report.distinct_solutions)


def test_criterion_05_worked_examples():
    with criterion(5, "hand-checked instances: 3x2 ambiguous, 4x2 unique, convex row, scalar"):
        # the 3x2 matrix admits exactly the two known colliding signals
        report = recover(GOLDEN_3X2, GOLDEN_3X2 @ np.array([1.0, -3.0]))
        assert report.status == "ambiguous"
        sols = sorted(map(tuple, np.round(report.distinct_solutions, 9)))
        assert sols == [(-5.0, 1.0), (1.0, -3.0)]

        # appending the row (1, -1) restores uniqueness for every measurement order
        y4 = GOLDEN_4X2 @ np.array([1.0, -3.0])
        for perm in itertools.permutations(range(4)):
            rep = recover(GOLDEN_4X2, y4[list(perm)])
            assert rep.status == "unique"
            assert np.max(np.abs(rep.x_hat - [1.0, -3.0])) <= 1e-8

        # unbalanced convex combination row: unique for 100 random signals
        convex = np.array([[1.0, 0.0], [0.0, 1.0], [0.75, 0.25]])
        rng = np.random.default_rng(5)
        for _ in range(100):
            x = rng.standard_normal(2)
            sel = random_selection(3, 3, rng)
            rep = recover(convex, sel.apply(convex) @ x)
            assert rep.status == "unique"
            assert np.max(np.abs(rep.x_hat - x)) <= 1e-8 * (1 + np.linalg.norm(x))

        # scalar signal from two measurements: the larger-magnitude row decides
        b = np.array([[2.0], [-1.0]])
        for order in ((0, 1), (1, 0)):
            rep = recover(b, (b[:, 0] * 0.7)[list(order)])
            assert rep.status == "unique"
            assert rep.x_hat == pytest.approx([0.7])


def test_criterion_06_local_stability_sweep():
    with criterion(6, "mean error strictly falls over snr 1e2..1e12 and is <= 1e-4 at 1e12"):
        rows = stability_sweep(
            GOLDEN_4X2,
            np.array([1.0, -3.0]),
            Selection(4, (0, 1, 2, 3)),
            snrs=[1e2, 1e4, 1e6, 1e8, 1e10, 1e12],
            trials=20,
            seed=6,
        )
        means = [r[1] for r in rows]
        for lo, hi in zip(means[1:], means[:-1]):
            assert lo < hi, means
        assert means[-1] <= 1e-4


def test_criterion_07_cycle_count_oracle():
    with criterion(7, "complete-cycle count predicts candidate feasibility, 200 triples"):
        k, n, m = 2, 4, 6
        rng = np.random.default_rng(7)
        hits_low = 0
        for trial in range(200):
            a = gen_matrix(m, k, "gaussian", seed=(7, trial))
            x = rng.standard_normal(k)
            true_sel = random_selection(m, n, rng)
            cand_sel = random_selection(m, n, rng)
            y = true_sel.apply(a) @ x
            tol = 1e-9 * (1.0 + np.linalg.norm(y))
            result = lstsq(cand_sel.apply(a), y)
            feasible = result.residual_norm <= tol
            n_complete = decompose(true_sel, cand_sel).n_complete
            if n_complete < k:
                hits_low += 1
                assert not feasible, (trial, n_complete)
                stacked = np.hstack([true_sel.apply(a), cand_sel.apply(a)])
                assert rank(stacked) == 2 * k, trial
            elif feasible:
                assert np.max(np.abs(result.solution - x)) <= 1e-7, trial
            # non-vacuous feasible branch: the true selection always qualifies
            truth = lstsq(true_sel.apply(a), y)
            assert truth.residual_norm <= tol
            assert np.max(np.abs(truth.solution - x)) <= 1e-7
        assert hits_low > 0


def test_criterion_08_witness_assignment_is_permutation():
    with criterion(8, "witness rows make the reduced cyclic system a permutation matrix, k=2..6"):
        for k in range(2, 7):
            g_reduced = cyclic_concatenation(rank_witness_assignment(k))[:, :-1]
            size = 2 * k - 1
            assert g_reduced.shape == (size, size)
            for row in g_reduced:
                assert sorted(row.tolist()) == [0.0] * (size - 1) + [1.0]
            for col in g_reduced.T:
                assert sorted(col.tolist()) == [0.0] * (size - 1) + [1.0]
            assert abs(det(g_reduced)) == 1.0


def test_criterion_09_pruning_is_an_exact_optimization():
    with criterion(9, "pruned search equals flat enumeration on 500 instances; prunes on k=3"):
        cases = (
            [(1, 2, 2)] * 100
            + [(1, 2, 3)] * 50
            + [(2, 4, 4)] * 120
            + [(2, 4, 5)] * 80
            + [(3, 6, 6)] * 150
        )
        assert len(cases) == 500
        config = SolveConfig()
        pruned_on_k3 = 0
        k3_count = 0
        rng = np.random.default_rng(9)
        for idx, (k, n, m) in enumerate(cases):
            a = gen_matrix(m, k, "gaussian", seed=(9, idx))
            x = rng.standard_normal(k)
            sel = random_selection(m, n, rng)
            y = sel.apply(a) @ x
            flat = recover(a, y, config)
            fast = recover_with_pruning(a, y, config)
            assert fast.status == flat.status, idx
            assert len(fast.distinct_solutions) == len(flat.distinct_solutions), idx
            for s_fast, s_flat in zip(fast.distinct_solutions, flat.distinct_solutions):
                assert np.max(np.abs(s_fast - s_flat)) <= config.uniqueness_tol, idx
            assert [s.picks for s in fast.witness_selections] == [
                s.picks for s in flat.witness_selections
            ], idx
            if k == 3:
                k3_count += 1
                pruned_on_k3 += fast.nodes_pruned > 0
        assert pruned_on_k3 >= 0.9 * k3_count, (pruned_on_k3, k3_count)


def _canonical_json(path):
    doc = json.loads(path.read_text())
    doc.pop("meta", None)
    return json.dumps(doc, sort_keys=True, indent=2).encode()


def _run_cli(args):
    result = CliRunner().invoke(cli_main, [str(a) for a in args])
    assert result.exit_code == 0, result.output
    return result


def test_criterion_10_cli_reports_are_reproducible(tmp_path):
    with criterion(10, "repeated CLI campaigns produce byte-identical JSON outside meta"):
        campaigns = []
        for k in (1, 2, 3):  # criterion 1's configs
            campaigns.append(
                ["montecarlo", "--kind", "montecarlo_exact", "--k", k, "--n", 2 * k,
                 "--m", 2 * k, "--trials", 200, "--seed", k]
            )
        campaigns.append(  # one of criterion 4's configs
            ["montecarlo", "--kind", "converse", "--k", 3, "--n", 5, "--m", 5,
             "--trials", 100, "--seed", 4]
        )
        campaigns.append(  # criterion 6's sweep
            ["montecarlo", "--kind", "snr_sweep", "--k", 2, "--n", 4, "--m", 4,
             "--trials", 20, "--seed", 6, "--snrs", "1e2,1e4,1e6,1e8,1e10,1e12"]
        )
        for i, args in enumerate(campaigns):
            first = tmp_path / f"first_{i}.json"
            second = tmp_path / f"second_{i}.json"
            _run_cli(args + ["--json", first])
            _run_cli(args + ["--json", second])
            assert _canonical_json(first) == _canonical_json(second), args
            assert b"generated_at" in first.read_bytes()
