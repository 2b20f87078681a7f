"""
select: knockoff selection on a CSV dataset
"""
import logging
from pathlib import Path

import click

from changepoint.thresholds import SortedPositiveW, choose_threshold, format_sorted_statistics
from commands import dataset_flags, solver_flags, solver_overrides
from config import solver_options_from
from harness.experiment import repeated_selection
from knockoffs.selection import select
from knockoffs.statistics import knockoff_statistics
from utils.csv_utils import read_dataset_csv, write_frame, write_json
from utils.seeding import SEED_MAX, fresh_seed

logger = logging.getLogger(__name__)


@click.command('select')
@dataset_flags
@click.option('--method', type=click.Choice(['stats', 'gaps', 'manual']), default='stats', show_default=True,
              help='Threshold rule: change detection on W (stats), on its gaps, or a manual value.')
@click.option('--seed', type=click.IntRange(0, SEED_MAX - 1), default=None,
              help='Knockoff seed; a fresh seed is drawn and recorded when omitted.')
@click.option('--threshold', type=click.FloatRange(0, min_open=True), default=None,
              help='Threshold s for --method manual.')
@click.option('--print', 'show', is_flag=True, help='Print the sorted positive statistics with the threshold.')
@click.option('--repeats', type=click.IntRange(min=1), default=1, show_default=True,
              help='Number of knockoff draws; above 1, selection frequencies are reported.')
@solver_flags
@click.option('--workers', type=click.IntRange(min=1), default=None, help='Parallel workers for --repeats.')
@click.option('--out', type=click.Path(file_okay=False), default=None, help='Output directory.')
@click.pass_context
def command(ctx, data, family, levels, method, seed, threshold, show, repeats,
            grid_size, grid_ratio, tol, max_iter, workers, out):
    """Select covariates of DATA with permutation knockoffs."""
    config = ctx.obj['config']
    opts = solver_options_from(config, **solver_overrides(grid_size, grid_ratio, tol, max_iter))
    dataset = read_dataset_csv(data, family, levels)
    if seed is None:
        seed = fresh_seed()
        logger.info(f'no seed given, drew {seed}')
    out_dir = Path(out or config.OUTPUT_DIR)

    if repeats > 1:
        if method == 'manual' and threshold is None:
            raise click.UsageError('--method manual with --repeats needs --threshold')
        report = repeated_selection(
            dataset, method, repeats, base_seed=seed, opts=opts, threshold=threshold,
            workers=workers or config.WORKERS,
        )
        frame = report.rates_frame().drop(columns=['beta']).rename(columns={'rate': 'frequency'})
        write_frame(frame, out_dir / 'frequencies.csv')
        write_frame(report.selections_frame(), out_dir / 'selections.csv')
        write_json({**report.summary(), 'seed': seed}, out_dir / 'summary.json')
        click.echo(f'selection frequencies over {repeats} knockoff draws written to {out_dir}')
        return

    run = knockoff_statistics(dataset, opts, seed)
    sorted_w = SortedPositiveW.from_statistics(run.W)
    if method == 'manual' and threshold is None:
        click.echo(format_sorted_statistics(sorted_w, names=dataset.names))
        threshold = click.prompt('threshold s', type=click.FloatRange(0, min_open=True))

    result, status = choose_threshold(run.W, method, threshold)
    selected = select(run.W, result.s) if result is not None else []
    s = result.s if result is not None else None

    if show:
        click.echo(format_sorted_statistics(sorted_w, s, dataset.names))

    write_frame(run.to_frame(dataset.names, selected), out_dir / 'w_table.csv')
    write_json({
        'indices': [int(i) for i in selected],
        'names': [dataset.names[i] for i in selected],
        's': s,
        'method': method,
        'status': status,
        'seed': seed,
        'breakpoints': result.breakpoints if result is not None else {},
        'family': dataset.family.name,
        'n': dataset.n,
        'p': dataset.p,
    }, out_dir / 'selection.json')

    logger.info(f'selected {len(selected)} of {dataset.p} covariates (method={method}, status={status}, seed={seed})')
    chosen = ', '.join(dataset.names[i] for i in selected) or 'none'
    click.echo(f'selected: {chosen}')
