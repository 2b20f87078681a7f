"""
Covariate selection from signed statistics
"""
import numpy as np


def select(W, s):
    """
    Selected covariates {i : W_i >= s}

    Raises:
        ValueError: s <= 0 (a nonpositive threshold would admit covariates
            that entered after their knockoff)
    """
    if not s > 0:
        raise ValueError(f'threshold must be positive, got {s}')
    return np.flatnonzero(np.asarray(W, dtype=float) >= s)


def importance_order(W):
    """Covariates with positive W, most important first (ties keep index order)"""
    W = np.asarray(W, dtype=float)
    positive = np.flatnonzero(W > 0)
    return positive[np.argsort(-W[positive], kind='stable')]
