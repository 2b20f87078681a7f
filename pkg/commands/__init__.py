"""
Command-line commands and their shared options
"""
import functools

import click

FAMILIES = ['linear', 'logistic', 'cumlogit']


def solver_flags(command):
    """--grid-size, --grid-ratio, --tol and --max-iter, overriding configuration values"""
    options = [
        click.option('--grid-size', type=click.IntRange(min=2), default=None, help='Number of lambda grid points.'),
        click.option('--grid-ratio', type=click.FloatRange(0, 1, min_open=True, max_open=True), default=None,
                     help='lambda_min / lambda_max.'),
        click.option('--tol', type=click.FloatRange(0, min_open=True), default=None, help='KKT tolerance.'),
        click.option('--max-iter', type=click.IntRange(min=1), default=None, help='Coordinate sweeps per grid point.'),
    ]
    return functools.reduce(lambda wrapped, option: option(wrapped), reversed(options), command)


def dataset_flags(command):
    """DATA argument with --family and --levels"""
    options = [
        click.argument('data', type=click.Path(dir_okay=False)),
        click.option('--family', type=click.Choice(FAMILIES), default='linear', show_default=True,
                     help='Regression family of the response.'),
        click.option('--levels', type=click.IntRange(min=3), default=None,
                     help='Ordinal levels (cumlogit; inferred from y when omitted).'),
    ]
    return functools.reduce(lambda wrapped, option: option(wrapped), reversed(options), command)


def solver_overrides(grid_size, grid_ratio, tol, max_iter):
    return {'grid_size': grid_size, 'grid_ratio': grid_ratio, 'tol': tol, 'max_iter': max_iter}
