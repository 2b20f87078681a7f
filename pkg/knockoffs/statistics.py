"""
Signed knockoff statistics from the augmented regression path
"""
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import pandas as pd

from knockoffs.construction import make_knockoffs
from models.dataset import standardize
from models.lasso_path import LassoPath
from solvers.options import SolverOptions
from solvers.path import entry_lambdas, fit_path

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class KnockoffRun:
    """One knockoff draw: permutation, knockoff matrix, entry values and W"""
    permutation: np.ndarray
    X_tilde: np.ndarray
    T: np.ndarray
    T_tilde: np.ndarray
    W: np.ndarray
    seed: Optional[int] = None
    path: Optional[LassoPath] = field(default=None, repr=False)

    @property
    def p(self):
        return self.W.size

    def to_frame(self, names=None, selected=None):
        """W table: index, name, T, T_tilde, W, selected"""
        if names is None:
            names = [f'X{j + 1}' for j in range(self.p)]
        chosen = np.zeros(self.p, dtype=bool)
        if selected is not None:
            chosen[np.asarray(selected, dtype=int)] = True
        return pd.DataFrame({
            'index': np.arange(self.p),
            'name': list(names),
            'T': self.T,
            'T_tilde': self.T_tilde,
            'W': self.W,
            'selected': chosen,
        })


def signed_statistics(T, T_tilde):
    """
    W_i = max(T_i, T~_i), signed +1 when the covariate enters strictly before
    its knockoff and -1 otherwise; W_i = 0 when neither ever enters
    """
    T = np.asarray(T, dtype=float)
    T_tilde = np.asarray(T_tilde, dtype=float)
    if T.shape != T_tilde.shape:
        raise ValueError('T and T_tilde must have the same length')
    W = np.maximum(T, T_tilde) * np.where(T > T_tilde, 1.0, -1.0)
    # store exact zeros as +0.0
    W[W == 0] = 0.0
    return W


def knockoff_statistics(dataset, opts=None, rng_seed=None):
    """
    Fit the path of y on [X, X_tilde] and compute the signed statistics

    Args:
        dataset: Dataset with the original covariates
        opts: SolverOptions shared with plain fits
        rng_seed: seed of the knockoff permutation (None for fresh entropy)

    Returns:
        KnockoffRun
    """
    opts = opts or SolverOptions()
    X_tilde, permutation = make_knockoffs(dataset.X, rng_seed)
    augmented, _, _ = standardize(np.hstack([dataset.X, X_tilde]))
    names = tuple(dataset.names) + tuple(f'{name}~' for name in dataset.names)
    path = fit_path(dataset.with_design(augmented, names), opts)
    entry = entry_lambdas(path, opts)
    p = dataset.p
    T, T_tilde = entry.T[:p], entry.T[p:]
    W = signed_statistics(T, T_tilde)
    logger.debug(
        f'knockoff run: {int(np.sum(W > 0))} of {p} positive statistics '
        f'over {path.size} grid points'
    )
    return KnockoffRun(
        permutation=permutation,
        X_tilde=X_tilde,
        T=T,
        T_tilde=T_tilde,
        W=W,
        seed=rng_seed if isinstance(rng_seed, (int, np.integer)) else None,
        path=path,
    )
