import json

import pytest

from unlabeled_sensing.experiments import ExperimentConfig, run_experiment
from unlabeled_sensing.io import json_report


def payload_without_meta(report):
    payload = report.to_payload()
    payload.pop("meta")
    return payload


class TestConfigValidation:
    def test_kind_checked(self):
        with pytest.raises(ValueError):
            ExperimentConfig(kind="bogus", k=1, n=2, m=2, trials=1, seed=0)

    def test_converse_needs_undersampling(self):
        with pytest.raises(ValueError):
            ExperimentConfig(kind="converse", k=2, n=4, m=4, trials=1, seed=0)

    def test_nullspace_needs_oversampling(self):
        with pytest.raises(ValueError):
            ExperimentConfig(kind="nullspace_check", k=2, n=3, m=4, trials=1, seed=0)

    def test_snr_sweep_needs_ascending_snrs(self):
        with pytest.raises(ValueError):
            ExperimentConfig(kind="snr_sweep", k=2, n=4, m=4, trials=1, seed=0, snrs=())
        with pytest.raises(ValueError):
            ExperimentConfig(
                kind="snr_sweep", k=2, n=4, m=4, trials=1, seed=0, snrs=(1e4, 1e2)
            )

    def test_dimension_sanity(self):
        with pytest.raises(ValueError):
            ExperimentConfig(kind="montecarlo_exact", k=1, n=3, m=2, trials=1, seed=0)


class TestMonteCarloExact:
    def test_scalar_smoke_campaign(self):
        # two unlabeled measurements of a scalar: the magnitude rule, 500 trials
        cfg = ExperimentConfig(kind="montecarlo_exact", k=1, n=2, m=2, trials=500, seed=1)
        report = run_experiment(cfg)
        assert report.aggregates["success_rate"] == 1.0
        assert report.aggregates["successes"] == 500
        assert len(report.trials) == 500
        assert all(r["status"] == "unique" for r in report.trials)

    def test_flat_and_pruned_agree(self):
        base = dict(kind="montecarlo_exact", k=2, n=4, m=4, trials=25, seed=7)
        pruned = run_experiment(ExperimentConfig(**base, prune=True))
        flat = run_experiment(ExperimentConfig(**base, prune=False))
        for a, b in zip(pruned.trials, flat.trials):
            assert a["status"] == b["status"]
            assert a["max_abs_err"] == pytest.approx(b["max_abs_err"], abs=1e-12)

    def test_reproducible_payload(self):
        cfg = ExperimentConfig(kind="montecarlo_exact", k=2, n=4, m=4, trials=10, seed=3)
        first = payload_without_meta(run_experiment(cfg))
        second = payload_without_meta(run_experiment(cfg))
        assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)


class TestConverseCampaign:
    def test_hundred_draws_all_valid(self):
        cfg = ExperimentConfig(kind="converse", k=3, n=5, trials=100, seed=2, m=5)
        report = run_experiment(cfg)
        agg = report.aggregates
        assert agg["valid_pairs"] == 100
        assert agg["degenerate_draws"] == 0
        assert agg["max_residual"] <= 1e-8
        assert agg["min_separation"] >= 0.5


class TestSnrSweep:
    def test_errors_fall_with_snr(self):
        cfg = ExperimentConfig(
            kind="snr_sweep", k=2, n=4, m=4, trials=5, seed=4, snrs=(1e2, 1e6, 1e12)
        )
        report = run_experiment(cfg)
        means = [row["mean_rel_err"] for row in report.aggregates["per_snr"]]
        maxes = [row["max_rel_err"] for row in report.aggregates["per_snr"]]
        assert means[0] > means[1] > means[2]
        assert maxes[2] <= 1e-4


class TestNullspaceCheck:
    def test_all_pairs_pass(self):
        cfg = ExperimentConfig(kind="nullspace_check", k=2, n=4, m=4, trials=2, seed=5)
        report = run_experiment(cfg)
        assert report.aggregates["all_passed"] is True
        assert report.trials[0]["pairs_checked"] == 24**2


class TestParallelExecution:
    def test_worker_pool_matches_serial(self, monkeypatch):
        cfg = ExperimentConfig(kind="montecarlo_exact", k=2, n=4, m=4, trials=8, seed=9)
        monkeypatch.delenv("US_THREADS", raising=False)
        serial = payload_without_meta(run_experiment(cfg))
        monkeypatch.setenv("US_THREADS", "2")
        parallel = payload_without_meta(run_experiment(cfg))
        assert json.dumps(serial, sort_keys=True) == json.dumps(parallel, sort_keys=True)


def test_payload_serializes_cleanly():
    cfg = ExperimentConfig(kind="montecarlo_exact", k=1, n=2, m=3, trials=3, seed=0)
    report = run_experiment(cfg)
    text = json_report(report.to_payload())
    doc = json.loads(text)
    assert doc["kind"] == "montecarlo_exact"
    assert doc["schema_version"] == 1
    assert doc["config"]["seed"] == 0
