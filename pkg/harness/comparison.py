"""
Paired comparison of selection methods on identical simulated data
"""
import logging

import pandas as pd

from harness.experiment import run_experiment
from models.errors import ConfigError

logger = logging.getLogger(__name__)


def _check_pairable(configs):
    first = configs[0]
    for config in configs[1:]:
        if config.p != first.p:
            raise ConfigError(f'p differs across experiments ({first.p} vs {config.p})', field='p')
        if config.n != first.n or config.base_seed != first.base_seed:
            raise ConfigError('paired experiments need the same n and base_seed', field='base_seed')
        if config.family != first.family or config.randomness_mode != first.randomness_mode:
            raise ConfigError('paired experiments need the same family and randomness mode', field='family')


def paired_table(reports):
    """One row per covariate: index, name, beta, then a rate column per method"""
    first = reports[0]
    frame = pd.DataFrame({
        'index': range(first.p),
        'name': list(first.names),
        'beta': first.beta,
    })
    for report in reports:
        label = report.method
        suffix = 2
        while label in frame.columns:
            label = f'{report.method}_{suffix}'
            suffix += 1
        frame[label] = report.detection_rate
    return frame


def compare_methods(configs, workers=1):
    """
    Run every experiment on the same data seeds and pair their detection rates

    Returns:
        (reports, paired table)

    Raises:
        ConfigError: no configs, or configs that cannot be paired (different p,
            n, base seed, family or randomness mode)
    """
    configs = list(configs)
    if not configs:
        raise ConfigError('nothing to compare')
    _check_pairable(configs)
    reports = [run_experiment(config, workers) for config in configs]
    table = paired_table(reports)
    logger.info(f'compared {", ".join(r.method for r in reports)} over p={configs[0].p}')
    return reports, table
