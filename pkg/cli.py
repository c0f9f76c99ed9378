#!/usr/bin/env python3

import click
import sys
import os
import json
import logging
from pathlib import Path

import numpy as np

from src.models import StdTwoModeState, GridSpec, CaseTag
from src.core import (
    AnalysisService, OracleService, ScanService, NumericalError, CATALOG, verify_catalog,
    williamson, residuals
)
from src.core.symplectic import symmetric_squeezing
from src.utils import parse_params, rounded
from src.utils.settings import settings

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_LEVELS = {"error": logging.ERROR, "warning": logging.WARNING, "info": logging.INFO, "debug": logging.DEBUG}


def _configure_logging():
    level = os.environ.get("GIE_LOG") or settings.get("logging.level", "warning")
    logging.basicConfig(level=LOG_LEVELS.get(str(level).lower(), logging.WARNING), format=LOG_FORMAT, stream=sys.stderr)


def _fail(e: Exception):
    click.echo(f"Error: {e}", err=True)
    if isinstance(e, (NumericalError, ArithmeticError, np.linalg.LinAlgError)):
        sys.exit(3)
    if isinstance(e, ValueError):
        sys.exit(2)
    sys.exit(1)


def _load_state(state_file, params) -> StdTwoModeState:
    if bool(state_file) == bool(params):
        raise ValueError("Give exactly one of --state FILE or --params a,b,kx,kp")
    if state_file:
        return StdTwoModeState.load_from_file(Path(state_file))
    return StdTwoModeState(*parse_params(params))


def _echo_json(data):
    click.echo(json.dumps(rounded(data), indent=2))


def _grid_from_options(grid, rmax, rounds) -> GridSpec:
    base = GridSpec.from_settings()
    overrides = {"r_max": rmax, "refinement_rounds": rounds}
    if grid:
        counts = [int(part) for part in grid.split(",")]
        if len(counts) != 5:
            raise ValueError(f"--grid expects five counts nt,nr,nphi,ntau,ntt, got {len(counts)}")
        overrides.update(dict(zip(("n_theta", "n_r", "n_phi", "n_tau", "n_t"), counts)))
    return base.with_overrides(**overrides)


state_options = [
    click.option('--state', 'state_file', type=click.Path(exists=True), help='JSON file with a, b, kx, kp'),
    click.option('--params', '-p', help='Comma-separated a,b,kx,kp (sqrt() allowed)'),
]


def with_state(func):
    for option in reversed(state_options):
        func = option(func)
    return func


@click.group()
def cli():
    """GIE Toolkit - Gaussian intrinsic entanglement of two-mode Gaussian states"""
    _configure_logging()


@cli.command()
@with_state
@click.option('--json', 'as_json', is_flag=True, help='Emit the report as JSON')
def analyze(state_file, params, as_json):
    """Classify a state and compute GIE, its bounds and companion measures"""
    try:
        s = _load_state(state_file, params)
        report = AnalysisService().analyze(s)

        if as_json:
            _echo_json(report)
            return

        gie = report["gie"]
        click.echo(f"State: a={s.a:.10g}, b={s.b:.10g}, kx={s.kx:.10g}, kp={s.kp:.10g}")
        click.echo(f"Class: {report['class']}")
        click.echo(f"Symplectic eigenvalues: nu1={report['nu1']:.10g}, nu2={report['nu2']:.10g}")
        click.echo(f"Entangled: {report['entangled']}")
        click.echo(f"G_min: {report['g_tilde_min']:.10g} (homodyne optimal: {report['homodyne_cond_ok']})")
        for key, label in (("upper_u", "U"), ("lower_l", "L")):
            value = report[key]
            click.echo(f"{label}: {value:.12g}" if value is not None else f"{label}: n/a")
        click.echo(f"\nGIE: {gie['value']:.12g}  [{gie['method']['kind']}"
                   f"{', ' + gie['method']['label'] if gie['method']['label'] else ''}]")
        if gie["method"]["kind"] == "oracle_bracket":
            click.echo(f"  Bracket: [{gie['method']['lo']:.12g}, {gie['method']['hi']:.12g}]"
                       f"{' (heuristic)' if gie['method']['heuristic'] else ''}")
        if gie["optimal_eve"]:
            click.echo(f"  Eve: {gie['optimal_eve']}")
        click.echo(f"GR2EoF: {report['gr2eof']:.12g}" if report["gr2eof"] is not None else "GR2EoF: n/a")
        click.echo(f"Log-negativity: {report['log_neg']:.12g}")
        if report["abs_diff"] is not None:
            click.echo(f"|GIE - GR2EoF|: {report['abs_diff']:.3e}")

    except Exception as e:
        _fail(e)


@cli.command()
@click.option('--n', 'n', type=click.IntRange(min=1), required=True, help='Number of states')
@click.option('--seed', type=int, default=42, help='Random seed')
@click.option('--class', 'class_id', type=click.IntRange(1, 7), required=True, help='State class 1-7')
@click.option('--out', 'out_path', type=click.Path(), required=True, help='Output CSV file')
@click.option('--workers', type=int, default=None, help='Worker processes (default from settings)')
def scan(n, seed, class_id, out_path, workers):
    """Sample states of one class and compare GIE with GR2EoF"""
    try:
        service = ScanService(max_workers=workers)

        def progress_callback(current, total, message):
            click.echo(f"Progress: {current}/{total} - {message}", err=True)

        service.set_progress_callback(progress_callback)
        records = service.run(class_id, n, seed)
        service.write_csv(records, Path(out_path))

        summary = service.summarize(records)
        max_diff = summary["max_abs_diff"]
        click.echo(f"Wrote {summary['rows']} rows to {out_path}; "
                   f"max |gie - gr2eof| = {max_diff:.3e}" if max_diff is not None
                   else f"Wrote {summary['rows']} rows to {out_path}; no GR2EoF comparison available")

    except Exception as e:
        _fail(e)


@cli.command('williamson')
@with_state
@click.option('--json', 'as_json', is_flag=True, help='Emit the decomposition as JSON')
def williamson_cmd(state_file, params, as_json):
    """Closed-form symplectic matrix bringing the CM to normal form"""
    try:
        s = _load_state(state_file, params)
        dec = williamson(s)
        symplectic_residual, normal_residual = residuals(s, dec)
        data = dec.to_dict()
        data.update({"residual_symplectic": symplectic_residual, "residual_normal_form": normal_residual})
        if dec.case_tag is CaseTag.SYM:
            data["z_a"], data["z_b"] = symmetric_squeezing(s.a, s.kx, s.kp)
        elif dec.case_tag is CaseTag.CASE_2A:
            data["q"] = s.kx / s.a

        if as_json:
            _echo_json(data)
            return

        click.echo(f"Case: {dec.case_tag.value}")
        for key in ("z_a", "z_b", "q"):
            if key in data:
                click.echo(f"{key}: {data[key]:.12g}")
        click.echo("S =")
        for row in dec.s_matrix:
            click.echo("  " + "  ".join(f"{x:+.10f}" for x in row))
        click.echo(f"nu1 = {dec.nu1:.12g}, nu2 = {dec.nu2:.12g}")
        click.echo(f"|S Omega S^T - Omega|_max = {symplectic_residual:.3e}")
        click.echo(f"|S gamma S^T - diag|_max = {normal_residual:.3e}")

    except Exception as e:
        _fail(e)


@cli.command()
@with_state
@click.option('--grid', help='Grid counts nt,nr,nphi,ntau,ntt')
@click.option('--rmax', type=float, default=None, help='Squeezing cap for r and t')
@click.option('--rounds', type=int, default=None, help='Refinement rounds')
@click.option('--workers', type=int, default=1, help='Worker processes for the outer grid')
@click.option('--trajectory', 'trajectory_path', type=click.Path(), help='Write the Eve search trajectory as CSV')
def oracle(state_file, params, grid, rmax, rounds, workers, trajectory_path):
    """Brute-force sup-inf evaluation of the conditional mutual information"""
    try:
        s = _load_state(state_file, params)
        service = OracleService(_grid_from_options(grid, rmax, rounds), max_workers=workers)

        def progress_callback(current, total, message):
            click.echo(f"Progress: {current}/{total} - {message}", err=True)

        service.set_progress_callback(progress_callback)
        report = service.run(s)
        if trajectory_path:
            service.export_trajectory(report["trajectory"], Path(trajectory_path))
        report.pop("trajectory")
        report["schema"] = 1
        _echo_json(report)

    except Exception as e:
        _fail(e)


@cli.command()
@click.option('--all', 'check_all', is_flag=True, help='Also check derived values')
@click.option('--json', 'as_json', is_flag=True, help='Emit entries and checks as JSON')
def catalog(check_all, as_json):
    """List the catalog states and check their expected values"""
    try:
        rows = verify_catalog(provenance=None if check_all else "published")
        failures = [row for row in rows if not row["ok"]]

        if as_json:
            _echo_json({
                "schema": 1,
                "entries": [entry.to_dict() for entry in CATALOG],
                "checks": rows,
            })
        else:
            for entry in CATALOG:
                a, b, kx, kp = entry.state.as_tuple()
                click.echo(f"{entry.id}: ({a:.6g}, {b:.6g}, {kx:.6g}, {kp:.6g}) [{entry.class_tag.value}] "
                           f"{entry.description}")
            click.echo("")
            for row in rows:
                status = "ok" if row["ok"] else "MISMATCH"
                click.echo(f"  {row['id']}.{row['quantity']}: expected {row['expected']:.12g}, "
                           f"got {row['actual']} ({row['provenance']}) {status}")
            click.echo(f"\n{len(rows) - len(failures)}/{len(rows)} checks passed")

        if failures:
            sys.exit(3)

    except Exception as e:
        _fail(e)


if __name__ == '__main__':
    cli()
