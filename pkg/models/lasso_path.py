"""
Fitted regularisation paths and the lambda grid they are computed on
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import pandas as pd

from models.family import ModelFamily


def lambda_grid(lambda_max, size, ratio):
    """
    Log-equispaced penalty grid from lambda_max down to ratio * lambda_max

    Args:
        lambda_max: top of the grid, must be positive
        size: number of grid points (>= 2)
        ratio: lambda_min / lambda_max, in (0, 1)

    Returns:
        strictly decreasing vector of length ``size``
    """
    if not np.isfinite(lambda_max) or lambda_max <= 0:
        raise ValueError(f'lambda_max must be positive, got {lambda_max}')
    if int(size) != size or size < 2:
        raise ValueError(f'grid size must be an integer >= 2, got {size}')
    if not 0 < ratio < 1:
        raise ValueError(f'grid ratio must lie in (0, 1), got {ratio}')
    grid = np.geomspace(lambda_max, lambda_max * ratio, int(size))
    grid[0] = lambda_max
    return grid


@dataclass(frozen=True, eq=False)
class LassoPath:
    """
    Penalised solutions along a decreasing lambda grid

    coefs is G x q (penalised columns), intercepts is G x m with m the
    family's number of intercepts. dev_ratio holds the fraction of null
    deviance explained at each grid point.
    """
    lambdas: np.ndarray
    coefs: np.ndarray
    intercepts: np.ndarray
    family: ModelFamily
    dev_ratio: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        lambdas = np.array(self.lambdas, dtype=float)
        coefs = np.array(self.coefs, dtype=float)
        intercepts = np.array(self.intercepts, dtype=float)
        if lambdas.ndim != 1 or lambdas.size == 0:
            raise ValueError('lambdas must be a non-empty vector')
        if np.any(lambdas <= 0) or np.any(np.diff(lambdas) >= 0):
            raise ValueError('lambdas must be positive and strictly decreasing')
        if coefs.ndim != 2 or coefs.shape[0] != lambdas.size:
            raise ValueError(f'coefs must have {lambdas.size} rows')
        m = self.family.n_intercepts
        if intercepts.shape != (lambdas.size, m):
            raise ValueError(f'intercepts must be {lambdas.size} x {m}')
        if self.family.is_ordinal and np.any(np.diff(intercepts, axis=1) <= 0):
            raise ValueError('cumulative logit intercepts must be strictly increasing')
        dev_ratio = self.dev_ratio
        if dev_ratio is not None:
            dev_ratio = np.array(dev_ratio, dtype=float)
            if dev_ratio.shape != lambdas.shape:
                raise ValueError('dev_ratio must match the lambda grid')
            dev_ratio.setflags(write=False)
        for array in (lambdas, coefs, intercepts):
            array.setflags(write=False)
        object.__setattr__(self, 'lambdas', lambdas)
        object.__setattr__(self, 'coefs', coefs)
        object.__setattr__(self, 'intercepts', intercepts)
        object.__setattr__(self, 'dev_ratio', dev_ratio)

    @property
    def size(self):
        return self.lambdas.size

    @property
    def n_penalized(self):
        return self.coefs.shape[1]

    def support(self, index, zero_clip=1e-8):
        """Penalised columns active at grid point ``index``"""
        return np.flatnonzero(np.abs(self.coefs[index]) >= zero_clip)

    def to_frame(self, names=None):
        """One row per grid point: lambda, deviance ratio, intercepts, coefficients"""
        if names is None:
            names = [f'X{j + 1}' for j in range(self.n_penalized)]
        frame = pd.DataFrame({'lambda': self.lambdas})
        if self.dev_ratio is not None:
            frame['dev_ratio'] = self.dev_ratio
        for k in range(self.intercepts.shape[1]):
            frame[f'intercept_{k + 1}'] = self.intercepts[:, k]
        coefs = pd.DataFrame(self.coefs, columns=list(names))
        return pd.concat([frame, coefs], axis=1)

    def __repr__(self):
        return f'<LassoPath {self.family} G={self.size} q={self.n_penalized}>'
