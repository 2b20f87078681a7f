"""
Gaussian covariates with a random-graph dependence structure
"""
import logging
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

logger = logging.getLogger(__name__)

EIGEN_FLOOR = 0.1


@dataclass(frozen=True, eq=False)
class CovariateModel:
    """
    Dependence structure of the simulated covariates

    precision is the inverse of sigma, sigma has unit diagonal, and the
    off-diagonal zeros of precision are exactly the non-edges of adjacency.
    """
    p: int
    edge_prob: float
    edge_weight: float
    precision: np.ndarray
    sigma: np.ndarray
    adjacency: np.ndarray = field(repr=False)

    @property
    def edge_count(self):
        return int(np.triu(self.adjacency, 1).sum())

    @property
    def edge_fraction(self):
        pairs = self.p * (self.p - 1) // 2
        return self.edge_count / pairs if pairs else 0.0

    @classmethod
    def independent(cls, p):
        identity = np.eye(p)
        return cls(p, 0.0, 0.0, identity, identity.copy(), np.zeros((p, p), dtype=bool))


def random_graph_precision(p, edge_prob=0.2, edge_weight=0.3, seed=None, diagonal=None,
                           diag_offset=EIGEN_FLOOR):
    """
    Random-graph precision matrix and its unit-diagonal covariance

    Each pair (i, j) is an edge independently with probability edge_prob.
    Omega = edge_weight * A + d * I with d = |smallest eigenvalue of
    edge_weight * A| + 0.1 + diag_offset, unless ``diagonal`` fixes d.
    sigma is Omega^-1 rescaled to unit diagonal and precision = sigma^-1,
    obtained by rescaling Omega with the same factors.

    Raises:
        ValueError: p < 2, edge_prob outside [0, 1], or a fixed diagonal
            leaving the smallest eigenvalue of Omega below 0.1
    """
    if int(p) != p or p < 2:
        raise ValueError(f'p must be an integer >= 2, got {p}')
    if not 0 <= edge_prob <= 1:
        raise ValueError(f'edge_prob must lie in [0, 1], got {edge_prob}')
    p = int(p)
    rng = np.random.default_rng(seed)

    upper = np.triu(rng.random((p, p)) < edge_prob, 1)
    adjacency = upper | upper.T
    weighted = edge_weight * adjacency.astype(float)
    smallest = float(linalg.eigvalsh(weighted, subset_by_index=[0, 0])[0])
    if diagonal is None:
        diagonal = abs(smallest) + EIGEN_FLOOR + diag_offset
    elif diagonal + smallest < EIGEN_FLOOR - 1e-12:
        raise ValueError(
            f'diagonal {diagonal} leaves the smallest eigenvalue of the precision '
            f'below {EIGEN_FLOOR}'
        )
    omega = weighted + diagonal * np.eye(p)

    covariance = linalg.inv(omega)
    covariance = 0.5 * (covariance + covariance.T)
    scale = np.sqrt(np.diag(covariance))
    sigma = covariance / np.outer(scale, scale)
    np.fill_diagonal(sigma, 1.0)
    precision = omega * np.outer(scale, scale)

    logger.debug(
        f'random graph: p={p} edges={int(upper.sum())} '
        f'(target fraction {edge_prob}) diagonal={diagonal:.4f}'
    )
    return CovariateModel(
        p=p,
        edge_prob=float(edge_prob),
        edge_weight=float(edge_weight),
        precision=precision,
        sigma=sigma,
        adjacency=adjacency,
    )


def sample_covariates(model, n, seed=None):
    """
    n independent rows from N(0, sigma)

    Raises:
        numpy.linalg.LinAlgError: sigma is not positive-definite
    """
    if int(n) != n or n < 1:
        raise ValueError(f'n must be a positive integer, got {n}')
    rng = np.random.default_rng(seed)
    try:
        factor = linalg.cholesky(model.sigma, lower=True)
    except linalg.LinAlgError:
        logger.error(f'covariance of the p={model.p} covariate model is not positive-definite')
        raise
    noise = rng.standard_normal((int(n), model.p))
    return noise @ factor.T
