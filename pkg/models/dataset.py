"""
Dataset model: design matrix, response and regression family
"""
import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
import pandas as pd

from models.errors import ConstantColumnError
from models.family import ModelFamily

logger = logging.getLogger(__name__)


def _frozen(array, dtype):
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Dataset:
    """n x p design matrix with its response vector

    Arrays are copied and made read-only on construction, so a Dataset can be
    shared freely between workers.
    """
    X: np.ndarray
    y: np.ndarray
    family: ModelFamily
    names: Optional[Tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        X = _frozen(self.X, float)
        if X.ndim != 2:
            raise ValueError(f'X must be a 2-D matrix, got {X.ndim} dimension(s)')
        n, p = X.shape
        if n < 2:
            raise ValueError(f'need at least 2 observations, got {n}')
        if p < 1:
            raise ValueError('need at least one covariate')
        if not np.all(np.isfinite(X)):
            row, col = np.argwhere(~np.isfinite(X))[0]
            raise ValueError(f'non-finite covariate value at row {row}, column {col}')

        y = np.asarray(self.y)
        if y.shape != (n,):
            raise ValueError(f'response must have length {n}, got shape {y.shape}')
        if self.family.is_linear:
            y = _frozen(y, float)
            if not np.all(np.isfinite(y)):
                raise ValueError(f'non-finite response at row {int(np.flatnonzero(~np.isfinite(y))[0])}')
        else:
            y = self._check_levels(y)

        names = self.names
        if names is None:
            names = tuple(f'X{j + 1}' for j in range(p))
        elif len(names) != p:
            raise ValueError(f'expected {p} covariate names, got {len(names)}')

        object.__setattr__(self, 'X', X)
        object.__setattr__(self, 'y', y)
        object.__setattr__(self, 'names', tuple(names))

    def _check_levels(self, y):
        levels = self.family.levels
        as_float = np.asarray(y, dtype=float)
        if not np.all(np.isfinite(as_float)) or np.any(as_float != np.round(as_float)):
            raise ValueError(f'{self.family.name} response must be integer coded')
        codes = as_float.astype(int)
        bad = (codes < 0) | (codes >= levels)
        if np.any(bad):
            row = int(np.flatnonzero(bad)[0])
            raise ValueError(
                f'{self.family.name} response must lie in {{0,...,{levels - 1}}}, '
                f'got {codes[row]} at row {row}'
            )
        counts = np.bincount(codes, minlength=levels)
        for level in np.flatnonzero(counts == 0):
            logger.warning(f'response level {level} has no observations')
        return _frozen(codes, int)

    @property
    def n(self):
        return self.X.shape[0]

    @property
    def p(self):
        return self.X.shape[1]

    def level_counts(self, rows=None):
        """Observations per response level (ordinal and binary families), optionally over a row subset"""
        y = self.y if rows is None else self.y[rows]
        return np.bincount(y, minlength=self.family.levels)

    def with_design(self, X, names=None):
        """Same response and family, new design matrix"""
        return Dataset(X, self.y, self.family, names)

    def subset(self, rows):
        """Dataset restricted to the given row indices"""
        return Dataset(self.X[rows], self.y[rows], self.family, self.names)

    def to_frame(self):
        """CSV layout: covariates in order, then a `y` column"""
        frame = pd.DataFrame(self.X, columns=list(self.names))
        frame['y'] = self.y
        return frame

    def __repr__(self):
        return f'<Dataset {self.family} n={self.n} p={self.p}>'


def standardize(X):
    """
    Centre each column and scale it to unit standard deviation (divisor n)

    Args:
        X: n x p matrix

    Returns:
        (standardized matrix, column means, column scales)

    Raises:
        ConstantColumnError: a column has zero variance
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ValueError('standardize expects a 2-D matrix')
    constant = np.flatnonzero(np.ptp(X, axis=0) == 0)
    if constant.size:
        raise ConstantColumnError(int(constant[0]))
    means = X.mean(axis=0)
    centred = X - means
    scales = np.sqrt(np.mean(centred ** 2, axis=0))
    return centred / scales, means, scales


def is_standardized(X, atol=1e-8):
    """True when every column has mean 0 and divisor-n standard deviation 1"""
    X = np.asarray(X, dtype=float)
    means = X.mean(axis=0)
    scales = np.sqrt(np.mean((X - means) ** 2, axis=0))
    return bool(np.all(np.abs(means) <= atol) and np.all(np.abs(scales - 1.0) <= atol))
