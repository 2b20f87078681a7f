"""
Shared fixtures
"""
import numpy as np
import pandas as pd
import pytest

from models.dataset import Dataset, standardize
from models.family import ModelFamily


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def make_dataset(family, n=200, p=6, beta=None, seed=0, levels=3):
    """Independent Gaussian covariates and a response of the given family"""
    rng = np.random.default_rng(seed)
    X, _, _ = standardize(rng.standard_normal((n, p)))
    if beta is None:
        beta = np.zeros(p)
        beta[:2] = (1.5, -1.0)
    eta = X @ np.asarray(beta, dtype=float)
    if family == 'linear':
        return Dataset(X, 0.5 + eta + rng.standard_normal(n), ModelFamily.linear())
    if family == 'logistic':
        prob = 1.0 / (1.0 + np.exp(-eta))
        return Dataset(X, (rng.random(n) < prob).astype(int), ModelFamily.logistic())
    cuts = np.linspace(-1.0, 1.0, levels - 1)
    cumulative = 1.0 / (1.0 + np.exp(-(cuts[None, :] + eta[:, None])))
    y = (rng.random(n)[:, None] > cumulative).sum(axis=1)
    return Dataset(X, y, ModelFamily.cumulative_logit(levels))


@pytest.fixture
def linear_dataset():
    return make_dataset('linear')


@pytest.fixture
def logistic_dataset():
    return make_dataset('logistic', n=300)


@pytest.fixture
def cumulative_dataset():
    return make_dataset('cumlogit', n=300)


@pytest.fixture
def signal_csv(tmp_path):
    """Linear dataset with five relevant covariates out of twenty, as CSV"""
    rng = np.random.default_rng(7)
    n, p = 150, 20
    X = rng.standard_normal((n, p))
    y = X[:, :5].sum(axis=1) * 1.5 + rng.standard_normal(n)
    frame = pd.DataFrame(X, columns=[f'X{j + 1}' for j in range(p)])
    frame['y'] = y
    path = tmp_path / 'signal.csv'
    frame.to_csv(path, index=False)
    return path


@pytest.fixture
def breakdown_statistics():
    """
    Twenty signed statistics: positive at X1-X7, X13, X14, X16, X19, X3 largest,
    and a clear break between the five leading covariates and the rest
    """
    W = np.array([
        0.301, 0.287, 0.342, 0.265, 0.248, 0.046, 0.031, -0.052, -0.027, -0.061,
        -0.018, 0.0, 0.039, 0.022, -0.044, 0.028, -0.035, -0.012, 0.051, -0.024,
    ])
    return W
