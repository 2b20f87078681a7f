"""
simulate: Monte-Carlo detection-rate experiments from a JSON document
"""
import dataclasses
import logging
from pathlib import Path

import click

from commands import solver_flags, solver_overrides
from config import solver_options_from
from harness.comparison import compare_methods
from harness.experiment import draw_dataset, experiment_graph, load_experiments, run_experiment
from utils.csv_utils import write_dataset_csv, write_frame

logger = logging.getLogger(__name__)


def _apply_overrides(experiment, folds, overrides):
    changes = {k: v for k, v in overrides.items() if v is not None}
    if changes:
        experiment = dataclasses.replace(experiment, solver=experiment.solver.with_changes(**changes))
    if folds is not None:
        experiment = dataclasses.replace(experiment, folds=folds)
    return experiment


@click.command('simulate')
@click.argument('experiment', type=click.Path(dir_okay=False))
@solver_flags
@click.option('--folds', type=click.IntRange(min=2), default=None, help='Cross-validation folds.')
@click.option('--workers', type=click.IntRange(min=1), default=None, help='Parallel workers for repetitions.')
@click.option('--dump-data', is_flag=True, help='Also write the dataset of repetition 0 as dataset.csv.')
@click.option('--out', type=click.Path(file_okay=False), default=None, help='Output directory.')
@click.pass_context
def command(ctx, experiment, grid_size, grid_ratio, tol, max_iter, folds, workers, dump_data, out):
    """Run the experiment described by EXPERIMENT (JSON) and write its report."""
    config = ctx.obj['config']
    overrides = solver_overrides(grid_size, grid_ratio, tol, max_iter)
    experiments = load_experiments(experiment, solver_defaults=solver_options_from(config))
    experiments = [_apply_overrides(e, folds, overrides) for e in experiments]
    workers = workers or config.WORKERS
    out_dir = Path(out or config.OUTPUT_DIR)

    if dump_data:
        first = experiments[0]
        path = write_dataset_csv(draw_dataset(first, experiment_graph(first), 0), out_dir / 'dataset.csv')
        logger.info(f'repetition 0 dataset written to {path}')

    if len(experiments) == 1:
        report = run_experiment(experiments[0], workers)
        report.write(out_dir)
        reports = [report]
    else:
        reports, table = compare_methods(experiments, workers)
        methods = [r.method for r in reports]
        for index, report in enumerate(reports):
            prefix = f'{report.method}_' if methods.count(report.method) == 1 else f'{report.method}{index + 1}_'
            report.write(out_dir, prefix=prefix)
        write_frame(table, out_dir / 'paired.csv')

    for report in reports:
        summary = report.summary()
        click.echo(
            f'{report.method}: relevant rate {summary["mean_rate_relevant"]}, '
            f'null rate {summary["mean_rate_null"]}, {report.empty_count} empty of {report.B}'
        )
    click.echo(f'report written to {out_dir}')
