"""Batch command-line interface.

Exit codes: 0 on success, 2 on configuration errors, 3 when an interface flux
is unavailable (curve-transform scheme without corrections).
"""

from __future__ import annotations

import sys

import click
import numpy as np

from .cases import get_case
from .errors import ConfigError, UnavailableFluxError
from .runner import (
    convergence_study,
    initial_states,
    profile_rows_from_fan,
    run_test,
    scheme_from_name,
    write_profile,
)
from .structure import compose_reference_fan

_SCHEMES = ("splitting", "kt", "kt-nocorr", "solver")


def _parse_domain(text: str) -> tuple[float, float]:
    try:
        a, b = (float(v) for v in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"domain must be 'a,b', got '{text}'") from exc
    return a, b


def _guarded(fn):
    try:
        fn()
    except ConfigError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except UnavailableFluxError as exc:
        click.echo(f"error: interface flux unavailable: {exc}", err=True)
        sys.exit(3)


@click.group()
def main():
    """Point-source Euler test problems: run, refine, and sample exact solutions."""


@main.command()
@click.option("--test", "test_id", type=click.IntRange(1, 8), required=True)
@click.option("--scheme", type=click.Choice(_SCHEMES), required=True)
@click.option("--h", "h", type=float, required=True, help="Cell width.")
@click.option("--cfl", type=float, default=0.5, show_default=True)
@click.option("--t-end", type=float, default=None, help="Override the built-in end time.")
@click.option("--domain", type=str, default="-10,10", show_default=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
def run(test_id, scheme, h, cfl, t_end, domain, out_path):
    """Advance one test problem and write the cell-mean profile CSV."""

    def body():
        report = run_test(test_id, scheme_from_name(scheme), h, cfl=cfl, t_end=t_end,
                          domain=_parse_domain(domain), out_path=out_path)
        click.echo(f"test {test_id} scheme={scheme} h={h:g} cells={report.n_cells} "
                   f"t_end={report.t_end:g} wall={report.duration:.2f}s")
        for var, (l1, l2, linf) in report.errors.items():
            click.echo(f"  {var:>3}: L1={l1:.6e}  L2={l2:.6e}  Linf={linf:.6e}")
        if report.wb_deviation is not None:
            click.echo(f"  equilibrium deviation (Linf): {report.wb_deviation:.3e}")
        click.echo(f"  oscillation (TV excess of rho): {report.oscillation:.3e}")
        click.echo(f"  profile written to {report.out_path}")

    _guarded(body)


@main.command()
@click.option("--test", "test_id", type=click.IntRange(1, 8), required=True)
@click.option("--scheme", type=click.Choice(_SCHEMES), required=True)
@click.option("--h-list", type=str, required=True, help="Comma-separated cell widths, descending.")
@click.option("--cfl", type=float, default=0.5, show_default=True)
@click.option("--out-dir", type=click.Path(), default=None, help="Write one profile CSV per width.")
def converge(test_id, scheme, h_list, cfl, out_dir):
    """Refinement study: density L1 errors and successive ratios."""

    def body():
        try:
            hs = [float(v) for v in h_list.split(",")]
        except ValueError as exc:
            raise ConfigError(f"bad --h-list '{h_list}'") from exc
        reports = convergence_study(test_id, scheme_from_name(scheme), hs, cfl=cfl,
                                    out_dir=out_dir)
        click.echo(f"test {test_id} scheme={scheme}  (density errors)")
        click.echo(f"{'h':>10} {'L1':>14} {'ratio':>8}")
        prev = None
        for rep in reports:
            l1 = rep.l1("rho")
            ratio = f"{prev / l1:8.3f}" if prev else "       -"
            click.echo(f"{rep.h:>10g} {l1:>14.6e} {ratio}")
            prev = l1
    _guarded(body)


@main.command()
@click.option("--test", "test_id", type=click.IntRange(1, 8), required=True)
@click.option("--samples", type=int, default=2000, show_default=True)
@click.option("--t-end", type=float, default=None)
@click.option("--domain", type=str, default="-10,10", show_default=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
def reference(test_id, samples, t_end, domain, out_path):
    """Sample the exactly composed solution of a test problem to CSV."""

    def body():
        case = get_case(test_id)
        t = case.t_end if t_end is None else t_end
        a, b = _parse_domain(domain)
        left, right = initial_states(case)
        fan = compose_reference_fan(left, right, case.coeffs)
        xs = np.linspace(a, b, samples)
        rows = profile_rows_from_fan(fan, xs, t)
        write_profile(out_path, xs, rows)
        click.echo(f"reference profile for test {test_id} at t={t:g}: "
                   f"{samples} samples -> {out_path}")

    _guarded(body)


if __name__ == "__main__":
    main()
