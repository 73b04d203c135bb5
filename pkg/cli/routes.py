"""
Command line surface: analyze, demo-polar and catalog

Exit codes: 0 success, 1 verification mismatch or internal inconsistency,
2 input error.
"""

import json
import logging
import sys

import click

from cli import AnalysisService, CatalogService, PolarDemoService
from cli.forms import parse_space
from cli.models import render_text
from errors import INPUT_ERRORS, SpaceParseError, SphericalError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2


def _fail(exc: SphericalError):
    """Report a pipeline error and exit with the matching code"""
    click.echo(f"error [{exc.stage or 'unknown'}]: {exc}", err=True)
    sys.exit(EXIT_INPUT if isinstance(exc, INPUT_ERRORS) else EXIT_MISMATCH)


def _read_text(stream) -> str:
    try:
        return stream.read()
    except UnicodeDecodeError as exc:
        raise SpaceParseError(f"not UTF-8 text at byte {exc.start}: {exc.reason}") from exc


@click.command("analyze")
@click.argument("space_file", type=click.File("r", encoding="utf-8"))
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["text", "structured"]),
    default="text",
    show_default=True,
)
@click.option("--skip-numeric", is_flag=True, help="Skip the Grassmannian check.")
@click.option("--tmax", type=click.IntRange(min=1), default=None, help="Last time of the schedule.")
@click.option("--seed", type=int, default=None, help="Sampling seed of the Grassmannian check.")
@click.option("--samples", type=click.IntRange(min=0), default=None, help="Samples per side.")
def analyze(space_file, output_format, skip_numeric, tmax, seed, samples):
    """Analyze the spherical space described in SPACE_FILE (JSON)."""
    try:
        desc = parse_space(_read_text(space_file))
        report = AnalysisService().analyze(
            desc, skip_numeric=skip_numeric or None, tmax=tmax, seed=seed, samples=samples
        )
    except SphericalError as exc:
        _fail(exc)
    if output_format == "structured":
        click.echo(report.model_dump_json(indent=2))
    else:
        click.echo(render_text(report))
    if not report.passed:
        logger.warning("Verification failed for %s", report.name)
        sys.exit(EXIT_MISMATCH)


@click.command("demo-polar")
@click.option("--samples", type=click.IntRange(min=1), default=None, help="Number of points.")
@click.option("--seed", type=int, default=None, help="Sampling seed.")
@click.option("--no-flip", is_flag=True, help="Forbid the Weyl flip w.")
def demo_polar(samples, seed, no_flip):
    """Decompose random hyperboloid points as k a w . z0."""
    summary = PolarDemoService().run(samples=samples, seed=seed, with_w=not no_flip)
    click.echo(summary.model_dump_json(indent=2))
    if summary.with_w and summary.coverage < 1.0:
        sys.exit(EXIT_MISMATCH)


@click.group("catalog")
def catalog():
    """The shipped example spaces with pinned results."""


@catalog.command("list")
def catalog_list():
    for name in CatalogService().list():
        click.echo(name)


@catalog.command("run")
@click.argument("names", nargs=-1)
@click.option("--skip-numeric", is_flag=True, help="Skip the Grassmannian check.")
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Parallel analyses.")
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["text", "structured"]),
    default="text",
    show_default=True,
)
def catalog_run(names, skip_numeric, jobs, output_format):
    """Run NAMES (default: all) and compare with the pinned values."""
    try:
        results = CatalogService(jobs=jobs).run(names, skip_numeric=skip_numeric)
    except SphericalError as exc:
        _fail(exc)
    if output_format == "structured":
        payload = [r.model_dump(exclude={"report"}) for r in results]
        click.echo(json.dumps(payload, indent=2, default=str))
    else:
        for r in results:
            click.echo(f"{r.name}: {'ok' if r.passed else 'FAILED'}")
            if r.error:
                click.echo(f"  {r.error}")
            for entry in r.diff:
                click.echo(f"  {entry.field}: expected {entry.expected}, got {entry.actual}")
    if not all(r.passed for r in results):
        sys.exit(EXIT_MISMATCH)


COMMANDS = (analyze, demo_polar, catalog)
