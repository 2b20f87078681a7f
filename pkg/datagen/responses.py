"""
Response simulation for the three regression families
"""
import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq
from scipy.special import expit, logit

from models.family import ModelFamily

logger = logging.getLogger(__name__)

INTERCEPT_BRACKET = 50.0


@dataclass(frozen=True, eq=False)
class ResponseSpec:
    """Coefficients, intercepts and noise level of a simulated response"""
    family: ModelFamily
    beta: np.ndarray
    intercepts: np.ndarray = field(default=None)
    noise_sd: float = 1.0

    def __post_init__(self):
        beta = np.array(self.beta, dtype=float)
        if beta.ndim != 1 or beta.size == 0:
            raise ValueError('beta must be a non-empty vector')
        m = self.family.n_intercepts
        if self.intercepts is None:
            if not self.family.is_linear:
                raise ValueError(f'{self.family} responses need {m} intercept(s)')
            intercepts = np.zeros(1)
        else:
            intercepts = np.atleast_1d(np.array(self.intercepts, dtype=float))
        if intercepts.shape != (m,):
            raise ValueError(f'{self.family} responses need {m} intercept(s), got {intercepts.size}')
        if self.family.is_ordinal and np.any(np.diff(intercepts) <= 0):
            raise ValueError('cumulative logit intercepts must be strictly increasing')
        if not self.noise_sd > 0:
            raise ValueError(f'noise_sd must be positive, got {self.noise_sd}')
        beta.setflags(write=False)
        intercepts.setflags(write=False)
        object.__setattr__(self, 'beta', beta)
        object.__setattr__(self, 'intercepts', intercepts)

    @property
    def p(self):
        return self.beta.size

    @property
    def support(self):
        return np.flatnonzero(self.beta != 0)


def simulate_response(spec, X, seed=None):
    """
    Draw a response vector for the rows of X

    Linear: y = alpha + X beta + noise_sd * N(0, 1).
    Logistic: y ~ Bernoulli(F(alpha + X beta)).
    Cumulative logit: P(y <= k) = F(alpha_k + X beta), levels 0..K-1.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != spec.p:
        raise ValueError(f'X must have {spec.p} columns, got shape {X.shape}')
    rng = np.random.default_rng(seed)
    eta = X @ spec.beta
    family = spec.family
    if family.is_linear:
        return spec.intercepts[0] + eta + spec.noise_sd * rng.standard_normal(eta.size)
    if family.is_logistic:
        return (rng.random(eta.size) < expit(spec.intercepts[0] + eta)).astype(int)
    cumulative = expit(spec.intercepts[None, :] + eta[:, None])
    if np.any(np.diff(cumulative, axis=1) < 0):
        raise ValueError('cumulative probabilities must be non-decreasing in the level')
    u = rng.random(eta.size)
    return (u[:, None] > cumulative).sum(axis=1).astype(int)


def default_targets(family):
    if family.is_logistic:
        return (0.5,)
    K = family.levels
    return tuple(k / K for k in range(1, K))


def auto_intercepts(family, X, beta, targets=None):
    """
    Intercepts giving the requested marginal class probabilities

    Solves mean_i F(alpha_k + x_i beta) = targets[k] for each k by bracketed
    root finding on [-50, 50]. Logistic targets give P(Y = 1); cumulative
    targets give P(Y <= k) and must be strictly increasing.

    Raises:
        ValueError: invalid targets or a root outside the bracket
    """
    if family.is_linear:
        raise ValueError('linear responses have no intercepts to calibrate')
    targets = np.asarray(default_targets(family) if targets is None else targets, dtype=float)
    m = family.n_intercepts
    if targets.shape != (m,):
        raise ValueError(f'{family} needs {m} target probabilities, got {targets.size}')
    if np.any((targets <= 0) | (targets >= 1)) or np.any(np.diff(targets) <= 0):
        raise ValueError('targets must be strictly increasing probabilities in (0, 1)')

    eta = np.asarray(X, dtype=float) @ np.asarray(beta, dtype=float)
    if np.ptp(eta) == 0:
        return logit(targets) - eta[0]

    def solve(target):
        def gap(alpha):
            return float(np.mean(expit(alpha + eta))) - target

        low, high = -INTERCEPT_BRACKET, INTERCEPT_BRACKET
        if gap(low) * gap(high) > 0:
            raise ValueError(f'no intercept in [{low}, {high}] reaches mean probability {target}')
        return brentq(gap, low, high, xtol=1e-12, rtol=1e-12)

    intercepts = np.array([solve(t) for t in targets])
    logger.debug(f'calibrated intercepts {np.round(intercepts, 4).tolist()} for targets {targets.tolist()}')
    return intercepts


def leading_coefficients(p, values=(1.0, 1.0, 1.0, 1.0, 1.0)):
    """beta with the given values on the first covariates and zeros elsewhere"""
    values = np.asarray(values, dtype=float)
    if values.size > p:
        raise ValueError(f'{values.size} leading values do not fit in p={p}')
    beta = np.zeros(p)
    beta[:values.size] = values
    return beta


def block_coefficients(p, values=(5.0, 4.0, 3.0, 2.0, 1.0), block=20):
    """beta with consecutive blocks of equal coefficients, then zeros"""
    values = np.asarray(values, dtype=float)
    if block < 1 or values.size * block > p:
        raise ValueError(f'{values.size} blocks of {block} do not fit in p={p}')
    return leading_coefficients(p, np.repeat(values, block))
