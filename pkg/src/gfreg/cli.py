"""``gfreg`` command line.

Exit codes: 0 success, 1 verification checks failed, 2 usage or parse error,
3 numeric failure in a pipeline stage.
"""
from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from .config import AnalysisConfig
from .exceptions import GfregError, SpecParseError, StageFailure
from .frame import moment_table
from .reports import _stage, dump_json, resolve_input, run_analyze
from .signals import embed
from .tauberian import g_infinity_test, local_decay_map, wavelet_transform
from .verify import rows_to_csv, rows_to_table, run_verify
from .zygmund import generalized_zygmund_membership, zygmund_exponent

EXIT_CHECKS_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


class _Fail(click.ClickException):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.exit_code = code


def _build_config(config_path, out, grid_n, period) -> AnalysisConfig:
    try:
        cfg = AnalysisConfig.load(config_path) if config_path else AnalysisConfig()
        return cfg.with_overrides(out_dir=out, grid_n=grid_n, period=period)
    except (OSError, json.JSONDecodeError, TypeError, ValueError) as exc:
        raise _Fail(f"invalid configuration: {exc}", EXIT_USAGE) from exc


def common_options(fn):
    """``--config``, ``--out``, ``--grid-n`` and ``--period``, resolved into ``config``."""

    @click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
                  help="JSON analysis configuration.")
    @click.option("--out", type=click.Path(file_okay=False), default=None, help="Output directory.")
    @click.option("--grid-n", type=int, default=None, help="Number of grid points.")
    @click.option("--period", type=float, default=None, help="Length of the periodic domain.")
    @functools.wraps(fn)
    def wrapper(config_path, out, grid_n, period, **kwargs):
        config = _build_config(config_path, out, grid_n, period)
        try:
            return fn(config=config, **kwargs)
        except SpecParseError as exc:
            raise _Fail(f"cannot parse input: {exc}", EXIT_USAGE) from exc
        except StageFailure as exc:
            raise _Fail(f"numeric failure in stage '{exc.stage}': {exc.cause}", EXIT_NUMERIC) from exc
        except GfregError as exc:
            raise _Fail(f"numeric failure: {exc}", EXIT_NUMERIC) from exc

    return wrapper


def _out_dir(config: AnalysisConfig) -> Path:
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="artifact")
def main():
    """Regularity analysis of generalized functions on periodic grids."""


@main.group()
def frame():
    """Littlewood-Paley frame diagnostics."""


@frame.command("check")
@common_options
def frame_check(config):
    """Print the moment-defect table of the frame as CSV."""
    fr = _stage("frame", config.frame)
    click.echo("order,phi_defect,psi_defect")
    for order, phi, psi in moment_table(fr, 6):
        click.echo(f"{order},{phi:.6e},{psi:.6e}")


@main.command()
@click.argument("source")
@common_options
def analyze(config, source):
    """Calibration, Zygmund and wavelet analysis of SOURCE (spec string or CSV path)."""
    result = run_analyze(config, source)
    paths = result.write(_out_dir(config))
    click.echo(result.bundle.to_json(), nl=False)
    click.echo(f"wrote {len(paths)} files to {config.out_dir}", err=True)


@main.command()
@click.option("--spec", "source", required=True, help="Catalog spec string or CSV path.")
@click.option("--r", "r", type=float, required=True, help="Regularity index to test.")
@common_options
def zygmund(config, source, r):
    """Zygmund exponent of the input and membership in the class of order r."""
    spec = resolve_input(source, config.grid)
    fr = _stage("frame", config.frame)
    est = _stage("zygmund", zygmund_exponent, spec, fr)
    net = _stage("embed", embed, spec, fr)
    mem = _stage("membership", generalized_zygmund_membership, net, r, 0.0, fr, config.scales())
    click.echo(dump_json({"input": spec.to_string(), "r": r, "r_hat": est.value, "capped": est.capped,
                          "fit": None if est.fit is None else est.fit.to_dict(),
                          "member": mem.member, "margin": mem.margin}), nl=False)


@main.command("wavelet-map")
@click.option("--spec", "source", required=True, help="Catalog spec string or CSV path.")
@click.option("--k", "k", type=click.IntRange(min=1), default=None,
              help="Vanishing-moment order of the analysing wavelet.")
@common_options
def wavelet_map(config, source, k):
    """Write the wavelet modulus matrix as CSV and print the decay profile as JSON."""
    spec = resolve_input(source, config.grid)
    fr = _stage("frame", config.frame)
    order = config.wavelet_order if k is None else k
    wmap = _stage("wavelet", wavelet_transform, spec, order, fr)
    profile = _stage("wavelet", local_decay_map, wmap)
    out = _out_dir(config)
    (out / "wavelet_map.csv").write_text(wmap.to_csv())
    text = dump_json({"input": spec.to_string(), "psi_order": order, **profile.to_dict(),
                      "x": [float(v) for v in profile.x]})
    (out / "decay_profile.json").write_text(text)
    click.echo(text, nl=False)


@main.command("smooth-test")
@click.option("--spec", "source", required=True, help="Catalog spec string or CSV path.")
@common_options
def smooth_test(config, source):
    """Is the input consistent with a smooth function?"""
    spec = resolve_input(source, config.grid)
    fr = _stage("frame", config.frame)
    net = _stage("embed", embed, spec, fr)
    verdict = _stage("smooth-test", g_infinity_test, net, max(3, config.max_order), config.window_obj(),
                     config.scales(), 0.25, config.p)
    click.echo(dump_json({"input": spec.to_string(), **verdict.to_dict()}), nl=False)


@main.command()
@click.option("--filter", "filter_", default=None, help="Run only checks whose name contains this text.")
@common_options
def verify(config, filter_):
    """Run the verification suite and print a pass/fail table.

    The table is also saved as ``verify.csv`` when an output directory is configured.
    """
    rows = run_verify(config, filter_)
    click.echo(rows_to_table(rows), nl=False)
    if config.out_dir != AnalysisConfig().out_dir:
        (_out_dir(config) / "verify.csv").write_text(rows_to_csv(rows))
    if not all(r.passed for r in rows):
        sys.exit(EXIT_CHECKS_FAILED)


if __name__ == "__main__":
    main()
