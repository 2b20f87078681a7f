"""
Permutation knockoffs: a row-shuffled copy of the design matrix
"""
import numpy as np


def make_knockoffs(X, rng_seed=None):
    """
    Draw the knockoff matrix by permuting the rows of X

    The permutation is uniform over all n! orderings (the identity included),
    so every knockoff column keeps the marginal distribution and the
    correlation structure of the covariates while losing its link with the
    response.

    Args:
        X: n x p design matrix
        rng_seed: integer seed, a numpy Generator, or None for fresh entropy

    Returns:
        (X_tilde, permutation) with X_tilde[i] = X[permutation[i]]
    """
    X = np.asarray(X)
    if X.ndim != 2:
        raise ValueError('knockoffs need a 2-D design matrix')
    n = X.shape[0]
    if n < 2:
        raise ValueError(f'knockoffs need at least 2 rows, got {n}')
    rng = np.random.default_rng(rng_seed)
    permutation = rng.permutation(n)
    return X[permutation], permutation


def canonical_rows(X):
    """Rows of X in lexicographic order; identical for any row permutation of X"""
    X = np.asarray(X)
    order = np.lexsort(X.T[::-1])
    return X[order]


def design_correlation(X):
    """
    Column correlation matrix computed on the canonical row order

    Floating-point sums depend on summation order, so the rows are sorted
    first: a row-permuted copy yields a bit-identical matrix.
    """
    return np.corrcoef(canonical_rows(X), rowvar=False)


def column_moments(X):
    """(means, divisor-n variances) of the columns, row-order invariant"""
    rows = canonical_rows(X)
    means = rows.mean(axis=0)
    return means, np.mean((rows - means) ** 2, axis=0)
