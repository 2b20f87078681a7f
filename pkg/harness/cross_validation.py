"""
K-fold cross-validation baseline over the lambda grid
"""
import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from models.dataset import standardize
from models.lasso_path import LassoPath
from solvers import likelihood
from solvers.options import SolverOptions
from solvers.path import fit_path

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CVResult:
    """Held-out deviance curve and the support chosen at lambda_min"""
    lambdas: np.ndarray
    mean_deviance: np.ndarray
    std_error: np.ndarray
    index_min: int
    support: np.ndarray
    path: LassoPath = field(repr=False)

    @property
    def lambda_min(self):
        return float(self.lambdas[self.index_min])

    def to_frame(self):
        return pd.DataFrame({
            'lambda': self.lambdas,
            'mean_deviance': self.mean_deviance,
            'std_error': self.std_error,
            'n_active': [self.path.support(i).size for i in range(self.lambdas.size)],
        })


def _levels_complete(dataset, rows):
    return bool(np.all(dataset.level_counts(rows) > 0))


def assign_folds(dataset, folds, rng):
    """
    Fold label of every row

    Rows are shuffled and dealt round-robin into ``folds`` groups. For
    logistic and ordinal responses every held-out fold and every training
    set must contain all levels; one reshuffle is allowed before giving up.

    Raises:
        ValueError: folds < 2, folds > n, or levels still missing after a reshuffle
    """
    n = dataset.n
    if int(folds) != folds or folds < 2:
        raise ValueError(f'folds must be an integer >= 2, got {folds}')
    if folds > n:
        raise ValueError(f'cannot split {n} observations into {folds} folds')
    base = np.arange(n) % int(folds)
    for attempt in range(2):
        labels = np.empty(n, dtype=int)
        labels[rng.permutation(n)] = base
        if dataset.family.is_linear:
            return labels
        complete = all(
            _levels_complete(dataset, labels == k) and _levels_complete(dataset, labels != k)
            for k in range(int(folds))
        )
        if complete:
            return labels
        logger.debug(f'fold assignment {attempt + 1} misses a response level')
    raise ValueError(f'could not split the {dataset.family} response into {folds} folds with every level present')


def cross_validate(dataset, folds=10, rng_seed=None, opts=None):
    """
    Mean held-out deviance along the full-data lambda grid

    Each fold standardizes its training rows, fits the path on the full-data
    grid and scores the held-out rows (mapped with the training transform).
    The curve covers the grid prefix fitted by every fold; lambda_min is the
    first minimiser and the support is read off the full-data path there.
    """
    opts = opts or SolverOptions()
    rng = np.random.default_rng(rng_seed)
    labels = assign_folds(dataset, folds, rng)

    Z, _, _ = standardize(dataset.X)
    full_path = fit_path(dataset.with_design(Z), opts)
    lambdas = full_path.lambdas

    fold_curves, fold_sizes = [], []
    for k in range(int(folds)):
        test = labels == k
        train_X, means, scales = standardize(dataset.X[~test])
        train = dataset.subset(np.flatnonzero(~test)).with_design(train_X)
        path = fit_path(train, opts, lambdas=lambdas)
        held_X = (dataset.X[test] - means) / scales
        held_y = dataset.y[test]
        curve = np.array([
            likelihood.deviance(dataset.family, held_y, held_X @ path.coefs[g], path.intercepts[g]).mean()
            for g in range(path.size)
        ])
        fold_curves.append(curve)
        fold_sizes.append(int(test.sum()))

    common = min(min(c.size for c in fold_curves), full_path.size)
    if common < lambdas.size:
        logger.debug(f'cross-validation curve truncated to {common} of {lambdas.size} grid points')
    curves = np.vstack([c[:common] for c in fold_curves])
    weights = np.asarray(fold_sizes, dtype=float) / sum(fold_sizes)
    mean = weights @ curves
    spread = weights @ (curves - mean) ** 2
    std_error = np.sqrt(spread / (int(folds) - 1))
    index_min = int(np.argmin(mean))
    support = full_path.support(index_min, opts.zero_clip)
    logger.debug(
        f'{dataset.family} cross-validation: lambda_min={lambdas[index_min]:.4g} '
        f'(grid point {index_min + 1}) support size {support.size}'
    )
    return CVResult(
        lambdas=lambdas[:common].copy(),
        mean_deviance=mean,
        std_error=std_error,
        index_min=index_min,
        support=support,
        path=full_path,
    )


def cv_select(dataset, folds=10, rng_seed=None, opts=None):
    """Covariates active at the cross-validated lambda_min"""
    return cross_validate(dataset, folds, rng_seed, opts).support
