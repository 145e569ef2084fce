"""Command-line interface: instance generation, recovery runs, campaigns.

Exit codes: 0 on success, 1 when a subcommand whose contract is uniqueness
hits an ambiguous/degenerate outcome, 2 on usage errors (bad flags, missing
or malformed files, inconsistent dimensions).
"""

import sys

import click

from .counterexamples import DegenerateInstanceError, construct
from .cycles import decompose
from .exact import STATUS_UNIQUE, SolveConfig, recover, recover_with_pruning
from .experiments import KINDS, ExperimentConfig, run_experiment
from .io import (
    CsvFormatError,
    parse_picks,
    read_matrix,
    read_vector,
    write_json_report,
    write_matrix,
    write_vector,
)
from .robust import robust_recover
from .sampling import NoiseSpec, Selection, gen_matrix, measure

_INPUT_ERRORS = (CsvFormatError, ValueError, OSError)


def _fail_usage(exc):
    click.echo(f"error: {exc}", err=True)
    sys.exit(2)


@click.group()
def main():
    """Recover signals from shuffled or unlabeled linear measurements."""


@main.command()
@click.option("--m", type=int, required=True, help="Number of rows.")
@click.option("--k", type=int, required=True, help="Number of columns.")
@click.option("--dist", type=click.Choice(["gaussian", "uniform"]), default="gaussian")
@click.option("--seed", type=int, default=0)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def gen(m, k, dist, seed, out):
    """Generate a random matrix and write it as CSV."""
    try:
        a = gen_matrix(m, k, dist, seed)
        write_matrix(out, a)
    except _INPUT_ERRORS as exc:
        _fail_usage(exc)
    click.echo(f"wrote {m}x{k} {dist} matrix to {out}")


@main.command("measure")
@click.option("--a", "a_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--x", "x_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--picks", required=True, help='Row picks, e.g. "2,0,1".')
@click.option("--snr", type=float, default=None, help="Gaussian noise at this exact SNR.")
@click.option("--seed", type=int, default=0)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def measure_cmd(a_path, x_path, picks, snr, seed, out):
    """Measure a signal through selected rows, optionally with noise."""
    try:
        a = read_matrix(a_path)
        x = read_vector(x_path)
        sel = Selection(a.shape[0], parse_picks(picks))
        noise = NoiseSpec.none() if snr is None else NoiseSpec.gaussian_snr(snr)
        inst = measure(a, x, sel, noise, seed=seed)
        write_vector(out, inst.y)
    except _INPUT_ERRORS as exc:
        _fail_usage(exc)
    click.echo(f"wrote {len(inst.y)} measurements to {out}")


@main.command("recover")
@click.option("--a", "a_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--y", "y_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--first-hit", is_flag=True, help="Stop at the first feasible candidate.")
@click.option("--no-prune", is_flag=True, help="Plain exhaustive enumeration.")
@click.option("--residual-tol", type=float, default=1e-9)
@click.option("--uniqueness-tol", type=float, default=1e-6)
@click.option("--max-nodes", type=int, default=None)
@click.option("--json", "json_path", type=click.Path(dir_okay=False), required=True)
def recover_cmd(a_path, y_path, first_hit, no_prune, residual_tol, uniqueness_tol,
                max_nodes, json_path):
    """Exact recovery from a noiseless unlabeled measurement (exit 1 unless unique)."""
    try:
        a = read_matrix(a_path)
        y = read_vector(y_path)
        config = SolveConfig(
            residual_tol=residual_tol,
            uniqueness_tol=uniqueness_tol,
            prune=not no_prune,
            max_nodes=max_nodes,
        )
        solve = recover if no_prune else recover_with_pruning
        report = solve(a, y, config, first_hit=first_hit)
    except _INPUT_ERRORS as exc:
        _fail_usage(exc)
    payload = report.to_dict()
    payload["config"] = {
        "residual_tol": residual_tol,
        "uniqueness_tol": uniqueness_tol,
        "prune": not no_prune,
        "first_hit": first_hit,
        "max_nodes": max_nodes,
    }
    write_json_report(json_path, payload)
    click.echo(f"status: {report.status} ({len(report.distinct_solutions)} solution class(es))")
    if report.status != STATUS_UNIQUE:
        sys.exit(1)


@main.command("robust")
@click.option("--a", "a_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--y", "y_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--n", type=int, required=True, help="Number of measurements.")
@click.option("--json", "json_path", type=click.Path(dir_okay=False), required=True)
def robust_cmd(a_path, y_path, n, json_path):
    """Noisy recovery: global least squares over all row selections."""
    try:
        a = read_matrix(a_path)
        y = read_vector(y_path)
        report = robust_recover(a, y, n)
    except _INPUT_ERRORS as exc:
        _fail_usage(exc)
    write_json_report(json_path, report.to_dict())
    click.echo(
        f"best residual {report.best_residual:.6e} "
        f"(runner-up {report.runner_up_residual:.6e})"
    )


@main.command("cycles")
@click.option("--true", "true_picks", required=True, help='True selection, e.g. "0,1,2".')
@click.option("--cand", "cand_picks", required=True, help='Candidate selection.')
@click.option("--m", type=int, required=True, help="Number of source rows.")
@click.option("--json", "json_path", type=click.Path(dir_okay=False), required=True)
def cycles_cmd(true_picks, cand_picks, m, json_path):
    """Cycle decomposition of a true/candidate selection pair."""
    try:
        true_sel = Selection(m, parse_picks(true_picks))
        cand_sel = Selection(m, parse_picks(cand_picks))
        decomp = decompose(true_sel, cand_sel)
    except _INPUT_ERRORS as exc:
        _fail_usage(exc)
    write_json_report(json_path, decomp.to_dict())
    click.echo(f"{decomp.n_complete} complete / {decomp.n_total} total cycles")


@main.command("adversary")
@click.option("--k", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--seed", type=int, default=0)
@click.option("--dist", type=click.Choice(["gaussian", "uniform"]), default="gaussian")
@click.option("--json", "json_path", type=click.Path(dir_okay=False), required=True)
def adversary_cmd(k, n, seed, dist, json_path):
    """Construct two signals that share an unlabeled measurement (needs n < 2k)."""
    try:
        if not (k >= 2 and 2 <= n < 2 * k):
            raise ValueError(f"needs k >= 2 and 2 <= n < 2k, got k={k}, n={n}")
        b = gen_matrix(n, k, dist, seed)
    except _INPUT_ERRORS as exc:
        _fail_usage(exc)
    try:
        pair = construct(b)
    except DegenerateInstanceError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    payload = pair.to_dict()
    payload["k"] = k
    payload["n"] = n
    payload["seed"] = seed
    write_json_report(json_path, payload)
    click.echo(
        f"ambiguous pair with residual {pair.residual:.3e}, separation {pair.separation:.3f}"
    )


@main.command("montecarlo")
@click.option("--kind", type=click.Choice(list(KINDS)), required=True)
@click.option("--k", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.option("--trials", type=int, required=True)
@click.option("--seed", type=int, required=True)
@click.option("--dist", type=click.Choice(["gaussian", "uniform"]), default="gaussian")
@click.option("--snrs", default="", help='Ascending SNR list, e.g. "1e2,1e4,1e6".')
@click.option("--residual-tol", type=float, default=1e-9)
@click.option("--uniqueness-tol", type=float, default=1e-6)
@click.option("--rank-tol", type=float, default=1e-9)
@click.option("--no-prune", is_flag=True)
@click.option("--max-nodes", type=int, default=None)
@click.option("--json", "json_path", type=click.Path(dir_okay=False), required=True)
def montecarlo_cmd(kind, k, n, m, trials, seed, dist, snrs, residual_tol,
                   uniqueness_tol, rank_tol, no_prune, max_nodes, json_path):
    """Run a seeded campaign and write a machine-readable report."""
    try:
        snr_values = tuple(float(tok) for tok in snrs.split(",") if tok.strip()) if snrs else ()
        cfg = ExperimentConfig(
            kind=kind,
            k=k,
            n=n,
            m=m,
            trials=trials,
            seed=seed,
            dist=dist,
            residual_tol=residual_tol,
            uniqueness_tol=uniqueness_tol,
            prune=not no_prune,
            max_nodes=max_nodes,
            rank_tol=rank_tol,
            snrs=snr_values,
        )
    except _INPUT_ERRORS as exc:
        _fail_usage(exc)
    report = run_experiment(cfg)
    write_json_report(json_path, report.to_payload())
    summary = {key: val for key, val in report.aggregates.items() if not isinstance(val, list)}
    click.echo(f"{kind}: " + ", ".join(f"{key}={val}" for key, val in summary.items()))


if __name__ == "__main__":
    main()
