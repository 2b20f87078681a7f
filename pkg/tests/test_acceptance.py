"""
Monte-Carlo acceptance runs (deselected by default; run with `pytest -m slow`)
"""
from pathlib import Path

import numpy as np
import pytest

from changepoint.thresholds import choose_threshold
from datagen.responses import ResponseSpec, block_coefficients, leading_coefficients, simulate_response
from harness.comparison import compare_methods
from harness.experiment import ExperimentConfig, Method, load_experiments, run_experiment
from knockoffs.selection import select
from knockoffs.statistics import knockoff_statistics
from models.dataset import Dataset
from models.family import ModelFamily

CONFIG_DIR = Path(__file__).resolve().parent.parent / 'configs'


@pytest.mark.parametrize('path', sorted(CONFIG_DIR.glob('*.json')), ids=lambda p: p.stem)
def test_bundled_configs_load(path):
    configs = load_experiments(path)
    assert {c.method for c in configs} == {Method.KNOCKOFF_WSTATS, Method.KNOCKOFF_GAPS, Method.CROSS_VALIDATION}
    assert all(c.beta.size == c.p for c in configs)


@pytest.mark.slow
def test_five_leading_covariates_break_away():
    n, p = 500, 20
    beta = leading_coefficients(p, [1, 1, 1, 1, 1])
    spec = ResponseSpec(ModelFamily.linear(), beta)
    relevant = set(range(5))
    for method in ('stats', 'gaps'):
        hits, nulls = 0, []
        for seed in range(20):
            rng = np.random.default_rng(seed)
            X = rng.standard_normal((n, p))
            data = Dataset(X, simulate_response(spec, X, seed + 1000), ModelFamily.linear())
            run = knockoff_statistics(data, rng_seed=seed + 2000)
            result, _ = choose_threshold(run.W, method)
            chosen = set(select(run.W, result.s).tolist()) if result is not None else set()
            hits += relevant <= chosen
            nulls.append(len(chosen - relevant))
        assert hits >= 16, method
        assert np.mean(nulls) <= 3, method


def _desk_config(family, method, B=50):
    return ExperimentConfig(
        n=200, p=50, B=B, family=family, beta=leading_coefficients(50, [1, 1, 1, 1, 1]),
        method=method, edge_prob=0.2, base_seed=2018,
    )


@pytest.mark.slow
def test_linear_detection_rates_separate_relevant_from_null():
    for method in (Method.KNOCKOFF_WSTATS, Method.KNOCKOFF_GAPS):
        summary = run_experiment(_desk_config(ModelFamily.linear(), method), workers=2).summary()
        assert summary['mean_rate_relevant'] >= 0.75, method
        assert summary['mean_rate_null'] <= 0.25, method


@pytest.mark.slow
def test_cross_validation_detects_more_null_covariates():
    configs = [
        _desk_config(ModelFamily.logistic(), Method.KNOCKOFF_WSTATS),
        _desk_config(ModelFamily.logistic(), Method.CROSS_VALIDATION),
    ]
    reports, _ = compare_methods(configs, workers=2)
    knockoff, cross_validation = (r.summary()['mean_rate_null'] for r in reports)
    assert cross_validation > knockoff


@pytest.mark.slow
def test_null_model_rarely_selects():
    config = ExperimentConfig(
        n=200, p=20, B=100, family=ModelFamily.linear(), beta=np.zeros(20),
        method=Method.KNOCKOFF_WSTATS, edge_prob=0.0, base_seed=5,
    )
    assert run_experiment(config, workers=2).detection_rate.mean() <= 0.2


@pytest.mark.slow
def test_detection_decreases_with_coefficient_size():
    config = ExperimentConfig(
        n=300, p=200, B=20, family=ModelFamily.linear(), beta=block_coefficients(200, block=10),
        method=Method.KNOCKOFF_WSTATS, edge_prob=0.015, base_seed=7,
    )
    groups = run_experiment(config, workers=2).group_summary()
    means = groups[groups['beta'] > 0]['mean'].to_numpy()
    assert np.all(np.diff(means) <= 0.05)
