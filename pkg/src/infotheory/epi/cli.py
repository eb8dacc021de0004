"""Command-line entry point.

Reports go to stdout (JSON) or to ``--out``; logs go to stderr. Exit code
0 means every check passed, 1 that a check failed, 2 a usage error.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path

import click
from pydantic import TypeAdapter

from infotheory.epi.config import QuadratureConfig, VerifyConfig
from infotheory.epi.exceptions import EpiError, SigmaSearchError
from infotheory.epi.harness.experiments import (
    CheckSummary,
    run_fuzz,
    run_lemma1_cases,
    run_lemma2_cases,
    run_lemma3_cases,
    run_lemma4_checks,
    run_sigma_sweep,
    run_special_cases,
)
from infotheory.epi.harness.io import read_pmf
from infotheory.epi.verify import verify_theorem1

logger = logging.getLogger(__name__)

EXIT_CHECK_FAILED = 1

# Every swept F(sigma) must stay below 1 + F_UPPER_TOL.
F_UPPER_TOL = 1e-6

_SUMMARIES = TypeAdapter(list[CheckSummary])


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper()),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _emit(payload: str, out: Path | None) -> None:
    if out is None:
        click.echo(payload)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(payload + "\n", encoding="utf-8")
    logger.info("Wrote %s", out)


def _finish(ctx: click.Context, passed: bool) -> None:
    if not passed:
        ctx.exit(EXIT_CHECK_FAILED)


@click.group()
@click.option(
    "--log-level",
    type=click.Choice(["debug", "info", "warning"], case_sensitive=False),
    default="warning",
    show_default=True,
    envvar="EPI_LOG",
    help="Diagnostics on stderr (also read from EPI_LOG).",
)
def main(log_level: str) -> None:
    """Numerical checks of the discrete entropy power inequality."""
    _configure_logging(log_level)


@main.command()
@click.option("--x", "x_path", type=click.Path(path_type=Path), required=True, help="Pmf of X")
@click.option("--y", "y_path", type=click.Path(path_type=Path), required=True, help="Pmf of Y")
@click.option("--assert-tol", type=float, default=1e-9, show_default=True)
@click.option(
    "--normalization-tol",
    type=click.FloatRange(min=0.0, max=1e-3, min_open=True),
    default=1e-9,
    show_default=True,
    help="Mass drift in the input files that is renormalized",
)
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Report path")
@click.pass_context
def verify(
    ctx: click.Context,
    x_path: Path,
    y_path: Path,
    assert_tol: float,
    normalization_tol: float,
    out: Path | None,
) -> None:
    """Check N(X) + N(Y) <= 2 N(X + Y) for two pmf files."""
    config = VerifyConfig(normalization_tol=normalization_tol)
    try:
        x, y = [
            read_pmf(path, config.merge_eps, normalization_tol=config.normalization_tol)
            for path in (x_path, y_path)
        ]
    except (OSError, EpiError) as exc:
        raise click.UsageError(str(exc)) from exc
    report = verify_theorem1(x, y, assert_tol, merge_eps=config.merge_eps)
    _emit(report.model_dump_json(indent=2), out)
    _finish(ctx, report.holds)


@main.command()
@click.option("--trials", type=click.IntRange(min=1), default=10_000, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--max-support", type=click.IntRange(min=1), default=8, show_default=True)
@click.option("--min-support", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Summary path")
@click.pass_context
def fuzz(
    ctx: click.Context,
    trials: int,
    seed: int,
    max_support: int,
    min_support: int,
    out: Path | None,
) -> None:
    """Check the doubled inequality on seeded random pairs."""
    if min_support > max_support:
        raise click.UsageError("--min-support cannot exceed --max-support")
    try:
        summary = run_fuzz(trials, (min_support, max_support), seed, VerifyConfig())
    except EpiError as exc:
        raise click.UsageError(str(exc)) from exc
    _emit(summary.model_dump_json(indent=2), out)
    _finish(ctx, summary.passed)


@main.command("sweep-sigma")
@click.option("--alpha-z", type=click.FloatRange(min=0.0, min_open=True), required=True)
@click.option(
    "--epsilon",
    type=click.FloatRange(min=0.0, max=1.0, min_open=True, max_open=True),
    required=True,
)
@click.option("--out", type=click.Path(path_type=Path), default=None, help="CSV path")
@click.pass_context
def sweep_sigma(ctx: click.Context, alpha_z: float, epsilon: float, out: Path | None) -> None:
    """Sweep sigma down from alpha_z / 4 until F(sigma) >= 1 - epsilon."""
    try:
        sweep = run_sigma_sweep(alpha_z, epsilon, out)
    except SigmaSearchError as exc:
        click.echo(f"sigma search failed: {exc}", err=True)
        ctx.exit(EXIT_CHECK_FAILED)
        return
    if out is None:
        click.echo(sweep.to_frame().write_csv(), nl=False)
        click.echo(f"sigma0={sweep.sigma0!r}", err=True)
    else:
        click.echo(f"sigma0={sweep.sigma0!r}")
    _finish(ctx, all(row.F <= 1.0 + F_UPPER_TOL for row in sweep.rows))


@main.command("lemma-check")
@click.argument("which", type=click.Choice(["1", "2", "3", "4"]))
@click.option(
    "--cases",
    type=click.IntRange(min=1),
    default=None,
    help="Case count for steps 1-3 (defaults 100, 1000, 100)",
)
@click.option(
    "--seed", type=click.IntRange(min=0), default=0, show_default=True, help="Steps 1-3"
)
@click.option(
    "--alpha-z",
    type=click.FloatRange(min=0.0, min_open=True),
    default=None,
    help="Spacing for step 4  [default: 1.0]",
)
@click.option(
    "--grid-points",
    type=click.IntRange(min=16),
    default=8192,
    show_default=True,
    help="Self-convolution grid for steps 1, 3 and 4",
)
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Summary path")
@click.pass_context
def lemma_check(
    ctx: click.Context,
    which: str,
    cases: int | None,
    seed: int,
    alpha_z: float | None,
    grid_points: int,
    out: Path | None,
) -> None:
    """Run the numerical checks for one step of the argument."""
    if which == "4" and cases is not None:
        raise click.UsageError("--cases does not apply to step 4")
    if which != "4" and alpha_z is not None:
        raise click.UsageError("--alpha-z only applies to step 4")
    q = QuadratureConfig(convolution_grid_points=grid_points)
    match which:
        case "1":
            summaries = [run_lemma1_cases(cases or 100, seed, q)]
        case "2":
            summaries = [run_lemma2_cases(cases or 1000, seed)]
        case "3":
            summaries = [run_lemma3_cases(cases or 100, seed, q)]
        case _:
            summaries = run_lemma4_checks(alpha_z or 1.0, q)
    _emit(_SUMMARIES.dump_json(summaries, indent=2).decode(), out)
    _finish(ctx, all(s.passed for s in summaries))


@main.command()
@click.option("--n-max", type=click.IntRange(min=2), default=30, show_default=True)
@click.option("--out", type=click.Path(path_type=Path), default=None, help="CSV path")
@click.pass_context
def families(ctx: click.Context, n_max: int, out: Path | None) -> None:
    """Stronger inequality on binomial and integer-uniform pairs."""
    result = run_special_cases(n_max)
    if out is None:
        click.echo(result.to_frame().write_csv(), nl=False)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        result.write_csv(out)
    failed = result.failures()
    click.echo(f"rows={len(result.rows)} failures={len(failed)}", err=True)
    _finish(ctx, result.passed)


if __name__ == "__main__":
    main()
