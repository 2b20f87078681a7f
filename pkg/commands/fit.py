"""
fit: regularisation path of a CSV dataset
"""
import logging
from pathlib import Path

import click

from commands import dataset_flags, solver_flags, solver_overrides
from config import solver_options_from
from models.dataset import standardize
from solvers.path import entry_lambdas, fit_path, lambda_max
from utils.csv_utils import read_dataset_csv, write_frame, write_json

logger = logging.getLogger(__name__)


@click.command('fit')
@dataset_flags
@solver_flags
@click.option('--out', type=click.Path(file_okay=False), default=None, help='Output directory.')
@click.pass_context
def command(ctx, data, family, levels, grid_size, grid_ratio, tol, max_iter, out):
    """Fit the L1-penalised path of DATA and write it as CSV."""
    config = ctx.obj['config']
    opts = solver_options_from(config, **solver_overrides(grid_size, grid_ratio, tol, max_iter))
    dataset = read_dataset_csv(data, family, levels)
    Z, means, scales = standardize(dataset.X)
    standardized = dataset.with_design(Z)
    path = fit_path(standardized, opts)
    entry = entry_lambdas(path, opts)

    out_dir = Path(out or config.OUTPUT_DIR)
    write_frame(path.to_frame(dataset.names), out_dir / 'path.csv')
    write_json({
        'family': dataset.family.name,
        'levels': dataset.family.levels,
        'n': dataset.n,
        'p': dataset.p,
        'lambda_max': lambda_max(standardized),
        'grid_points': path.size,
        'solver': opts.to_dict(),
        'entry_lambda': dict(zip(dataset.names, entry.T.tolist())),
        'column_means': means.tolist(),
        'column_scales': scales.tolist(),
    }, out_dir / 'fit.json')

    logger.info(f'fit {dataset}: {path.size} grid points written to {out_dir}')
    click.echo(f'{dataset.family} path with {path.size} grid points written to {out_dir / "path.csv"}')
