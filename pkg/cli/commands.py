# cli/commands.py - The drwlab command group
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from functools import wraps

import click
from click_didyoumean import DYMGroup
from django.conf import settings

from cli.models import FORMATS, RunConfig
from cli.parser import parse_element
from cli.serializers import (
    CheckResultSerializer, GeneratorSerializer, PairingReportSerializer, ReportSerializer, to_json,
)
from cli.suites import SUITES, run_suite, suite_names
from cli.views import render_check, render_family, render_pairing, render_report
from core.exceptions import (
    ContextMismatch, DegreeError, DrwlabError, NotInImage, ParseError, ResourceError, SearchExhausted,
    ValidationError, WindowTooSmall,
)
from core.models import Report
from drwlab import __version__
from drwlab.conf import configure_logging
from duality_engine.verification import verify_local_duality
from filtrations.models import FilKind, FiltrationId
from filtrations.utils import conductor, generators

logger = logging.getLogger(__name__)

EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

EXIT_CODES = {
    ParseError: EXIT_USAGE,
    ValidationError: EXIT_USAGE,
    DegreeError: EXIT_USAGE,
    ContextMismatch: EXIT_USAGE,
    NotInImage: EXIT_USAGE,
    ResourceError: EXIT_RESOURCE,
    SearchExhausted: EXIT_RESOURCE,
    WindowTooSmall: EXIT_RESOURCE,
}


def exit_code_for(error):
    for kind, code in EXIT_CODES.items():
        if isinstance(error, kind):
            return code
    return EXIT_USAGE


def handle_errors(func):
    """Turn library errors into an error object and the matching exit status"""

    @wraps(func)
    def _wrapped(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except DrwlabError as error:
            logger.error(f"{func.__name__} failed: {error}")
            click.echo(to_json(error.to_dict()), err=True)
            sys.exit(exit_code_for(error))

    return _wrapped


def run_options(func):
    """--p --n --window --r --q --format --seed --jobs, folded into a RunConfig"""
    options = [
        click.option('--p', 'p', type=int, required=True, help='Prime p'),
        click.option('--n', 'n', type=int, default=1, show_default=True, help='Witt length n'),
        click.option('--window', 'window', default=None, metavar='MIN:MAX',
                     help='Weight window (default from DRWLAB_DEFAULT_WINDOW)'),
        click.option('--r', 'r', type=int, default=0, show_default=True, help='Divisor multiplicity r'),
        click.option('--q', 'q', type=click.IntRange(0, 1), default=1, show_default=True, help='Form degree'),
        click.option('--format', 'fmt', type=click.Choice(FORMATS), default='text', show_default=True),
        click.option('--seed', 'seed', type=int, default=0, show_default=True, help='Seed for sampled checks'),
        click.option('--jobs', 'jobs', type=int, default=None, help='Parallel suite workers'),
    ]

    @wraps(func)
    def _wrapped(p, n, window, r, q, fmt, seed, jobs, **kwargs):
        cfg = RunConfig(p, n, window or settings.DRWLAB_DEFAULT_WINDOW, r, q, fmt, seed,
                        jobs or settings.DRWLAB_JOBS)
        return func(cfg, **kwargs)

    for option in reversed(options):
        _wrapped = option(_wrapped)
    return _wrapped


@click.group(cls=DYMGroup)
@click.version_option(version=__version__, prog_name='drwlab')
def drwlab():
    """Exact de Rham-Witt computations with poles and zeros along a point"""
    configure_logging()


@drwlab.command('conductor')
@click.argument('expression')
@handle_errors
@run_options
def conductor_command(cfg, expression):
    """Conductor of an element expression"""
    element = parse_element(expression, cfg.ctx)
    value = conductor(element)
    if cfg.fmt == 'json':
        click.echo(to_json({'config': cfg.to_dict(), 'expression': expression, 'degree': element.q,
                            'conductor': value}))
    else:
        click.echo(value)


@drwlab.command('fil-basis')
@click.option('--kind', type=click.Choice([kind.value for kind in FilKind]), default=FilKind.FILP.value,
              show_default=True)
@handle_errors
@run_options
def fil_basis_command(cfg, kind):
    """Generators of a filtration layer inside the window"""
    family = generators(FiltrationId(kind, cfg.r, cfg.q, cfg.ctx), cfg.window)
    if cfg.fmt == 'json':
        click.echo(to_json({'config': cfg.to_dict(), 'filtration': str(family.fid), 'window': str(family.window),
                            'generators': [GeneratorSerializer(member).data for member in family]}))
    else:
        click.echo(render_family(family))


def _collect(names, cfg):
    if cfg.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as executor:
            futures = {name: executor.submit(run_suite, name, cfg) for name in names}
            reports = {name: future.result() for name, future in futures.items()}
    else:
        reports = {name: run_suite(name, cfg) for name in names}
    return [reports[name] for name in sorted(reports)]


@drwlab.command('verify')
@click.argument('suite', required=False, type=click.Choice(sorted(SUITES) + ['all']))
@click.option('--suite', 'suite_option', type=click.Choice(sorted(SUITES) + ['all']), default=None)
@handle_errors
@run_options
def verify_command(cfg, suite, suite_option):
    """Run a verification suite (or all of them)"""
    selection = suite or suite_option or 'all'
    start = time.perf_counter()
    reports = _collect(suite_names(selection), cfg)
    combined = Report(selection, cfg.to_dict())
    for report in reports:
        combined.extend(report.checks)
    combined.elapsed = time.perf_counter() - start
    if cfg.fmt == 'json':
        click.echo(to_json(ReportSerializer(combined).data))
    else:
        for report in reports:
            click.echo(render_report(report))
    if not combined.passed:
        sys.exit(EXIT_FAILED)


@drwlab.command('duality')
@handle_errors
@run_options
def duality_command(cfg):
    """Local duality: annihilators and the graded residue pairing"""
    checks, report = verify_local_duality(cfg.ctx, cfg.q, cfg.r, cfg.window)
    if cfg.fmt == 'json':
        click.echo(to_json({'config': cfg.to_dict(), 'pairing': PairingReportSerializer(report).data,
                            'checks': [CheckResultSerializer(check).data for check in checks]}))
    else:
        click.echo(render_pairing(report, f"FilP_{cfg.r}/regular x regular/zero_{cfg.r}: "))
        for check in checks:
            click.echo(render_check(check))
    if not all(check.passed for check in checks):
        sys.exit(EXIT_FAILED)


def main():
    drwlab(prog_name='drwlab')
