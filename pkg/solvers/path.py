"""
Pathwise solvers for the L1-penalised log-likelihood

For each lambda on a decreasing grid the solvers maximise
(1/n) loglik(alpha, beta) - lambda * ||beta||_1, warm-starting from the
previous grid point. Linear paths are solved directly by coordinate descent;
logistic and cumulative logit paths by proximal Newton steps whose weighted
least-squares subproblems are solved by the same coordinate descent.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from models.dataset import is_standardized
from models.errors import ConvergenceError, DegenerateLambdaError
from models.lasso_path import LassoPath, lambda_grid
from solvers import likelihood
from solvers.coordinate_descent import kkt_violation, weighted_lasso
from solvers.options import SolverOptions

logger = logging.getLogger(__name__)

# lambda_max below this fraction of the score's RMS is read as zero
_DEGENERATE_RTOL = 1e-10
_MAX_NEWTON_STEPS = 200
_MAX_HALVINGS = 40
_ASCENT_SLACK = 1e-12
_INNER_TOL_RATIO = 0.1
_INNER_TOL_FLOOR = 0.1


@dataclass(frozen=True, eq=False)
class EntryStatistics:
    """Entry value T_i of every penalised column, read off the fitted grid"""
    T: np.ndarray
    grid_resolution: np.ndarray


def lambda_max(dataset):
    """
    Smallest penalty with an all-zero penalised solution

    The bound is max_j |<x_j, s>| / n where s is the score of the
    intercept-only fit: y - mean(y) for linear and logistic models, and
    1 - F(u) - F(l) for the cumulative logit model.

    Raises:
        DegenerateLambdaError: the bound is zero (no column correlates with the score)
    """
    family = dataset.family
    y = dataset.y
    intercepts = likelihood.intercept_only(family, y)
    score = likelihood.working_score(family, y, np.zeros(dataset.n), intercepts)
    value = float(np.max(np.abs(dataset.X.T @ score)) / dataset.n)
    rms = float(np.sqrt(np.mean(score ** 2)))
    if value <= _DEGENERATE_RTOL * rms or value == 0.0:
        raise DegenerateLambdaError(
            f'lambda_max is zero for this {family} dataset: '
            'no covariate correlates with the intercept-only score'
        )
    return value


def _objective(family, X, y, intercepts, beta, lam):
    eta = X @ beta
    return float(np.mean(likelihood.log_likelihood(family, y, eta, intercepts)) - lam * np.abs(beta).sum())


def _backtrack(objective, current, proposal):
    """Step-halving from current towards proposal until the objective does not drop"""
    base = objective(*current)
    slack = _ASCENT_SLACK * max(1.0, abs(base))
    step = 1.0
    for _ in range(_MAX_HALVINGS):
        candidate = tuple(c + step * (p - c) for c, p in zip(current, proposal))
        if objective(*candidate) >= base - slack:
            return candidate
        step *= 0.5
    return current


def _inner_tol(opts, violation):
    # subproblems only need to beat the current outer KKT gap
    return max(_INNER_TOL_FLOOR * opts.tol, _INNER_TOL_RATIO * violation)


def _solve_linear(family, X, y, intercepts, beta, lam, opts):
    residual = y - intercepts[0] - X @ beta
    shift, sweeps = weighted_lasso(X, None, residual, beta, lam, opts.tol, opts.max_iter, fit_intercept=True)
    return intercepts + shift, beta, sweeps


def _solve_logistic(family, X, y, intercepts, beta, lam, opts):
    n = y.size
    sweeps = 0
    violation = np.inf
    for _ in range(_MAX_NEWTON_STEPS):
        prob = expit(intercepts[0] + X @ beta)
        resid = y - prob
        violation = max(kkt_violation(X.T @ resid / n, beta, lam), abs(resid.mean()))
        if violation <= opts.tol:
            return intercepts, beta, sweeps
        if sweeps >= opts.max_iter:
            break
        weights = np.maximum(prob * (1.0 - prob), likelihood.WEIGHT_FLOOR)
        proposal = beta.copy()
        shift, used = weighted_lasso(
            X, weights, resid / weights, proposal, lam, _inner_tol(opts, violation), opts.max_iter - sweeps,
            fit_intercept=True,
        )
        sweeps += used
        intercepts, beta = _backtrack(
            lambda a, b: _objective(family, X, y, a, b, lam),
            (intercepts, beta),
            (intercepts + shift, proposal),
        )
    raise ConvergenceError(lam, sweeps, violation)


def fit_cumulative_intercepts(family, y, eta, start, tol, max_steps=100):
    """
    Newton ascent on the cumulative logit intercepts with the linear predictor fixed

    Steps are halved until the intercepts stay strictly increasing and the
    log-likelihood does not decrease.
    """
    def total(alpha):
        return float(np.sum(likelihood.log_likelihood(family, y, eta, alpha)))

    n = y.size
    alpha = np.array(start, dtype=float)
    current = total(alpha)
    for _ in range(max_steps):
        gradient, hessian = likelihood.cumulative_intercept_derivatives(y, eta, alpha)
        if np.max(np.abs(gradient)) / n <= tol:
            break
        try:
            direction = np.linalg.solve(hessian, -gradient)
        except np.linalg.LinAlgError:
            direction = gradient / max(1.0, float(np.max(np.abs(gradient))))
        step = 1.0
        while step > 1e-12:
            candidate = alpha + step * direction
            if np.all(np.diff(candidate) > 0):
                value = total(candidate)
                if value >= current - _ASCENT_SLACK * max(1.0, abs(current)):
                    break
            step *= 0.5
        else:
            break
        alpha, current = candidate, value
    return alpha


def _solve_cumulative(family, X, y, intercepts, beta, lam, opts):
    n = y.size
    sweeps = 0
    violation = np.inf
    for _ in range(_MAX_NEWTON_STEPS):
        eta = X @ beta
        intercepts = fit_cumulative_intercepts(family, y, eta, intercepts, opts.tol)
        score, weights = likelihood.cumulative_terms(y, eta, intercepts)
        alpha_gradient, _ = likelihood.cumulative_intercept_derivatives(y, eta, intercepts)
        violation = max(
            kkt_violation(X.T @ score / n, beta, lam),
            float(np.max(np.abs(alpha_gradient))) / n,
        )
        if violation <= opts.tol:
            return intercepts, beta, sweeps
        if sweeps >= opts.max_iter:
            break
        weights = np.maximum(weights, likelihood.WEIGHT_FLOOR)
        proposal = beta.copy()
        _, used = weighted_lasso(
            X, weights, score / weights, proposal, lam, _inner_tol(opts, violation), opts.max_iter - sweeps
        )
        sweeps += used
        alpha = intercepts
        (beta,) = _backtrack(
            lambda b: _objective(family, X, y, alpha, b, lam),
            (beta,),
            (proposal,),
        )
    raise ConvergenceError(lam, sweeps, violation)


_SOLVERS = {
    'linear': _solve_linear,
    'logistic': _solve_logistic,
    'cumlogit': _solve_cumulative,
}


def _gradient(family, X, y, intercepts, beta):
    """Derivative of (1/n) loglik in beta"""
    score = likelihood.working_score(family, y, X @ beta, intercepts)
    return X.T @ score / y.size


def strong_set(gradient, beta, lam, previous):
    """
    Columns kept by the sequential strong rule

    Active columns plus every zero column with |gradient| >= 2 lam - previous,
    the gradient taken at the solution for the previous grid value.
    """
    return np.flatnonzero((beta != 0) | (np.abs(gradient) >= 2.0 * lam - previous))


def _solve_screened(solve, family, X, y, intercepts, beta, lam, previous, opts):
    """
    Solve on the strong-rule working set, then add every column outside it
    that violates the KKT conditions and solve again until none does
    """
    q = X.shape[1]
    working = strong_set(_gradient(family, X, y, intercepts, beta), beta, lam, previous)
    sweeps = 0
    while True:
        sub = np.asfortranarray(X[:, working])
        intercepts, sub_beta, used = solve(family, sub, y, intercepts, beta[working], lam, opts)
        sweeps += used
        beta = np.zeros(q)
        beta[working] = sub_beta
        outside = np.ones(q, dtype=bool)
        outside[working] = False
        gradient = _gradient(family, X, y, intercepts, beta)
        violators = np.flatnonzero(outside & (np.abs(gradient) > lam + opts.tol))
        if violators.size == 0:
            return intercepts, beta, sweeps
        logger.debug(f'lambda={lam:.4g}: {violators.size} column(s) outside the strong set violate KKT')
        working = np.union1d(working, violators)


def fit_path(dataset, opts=None, lambdas=None):
    """
    Fit the L1-penalised regression path of a standardized dataset

    Args:
        dataset: Dataset whose covariates are standardized
        opts: SolverOptions (defaults when omitted)
        lambdas: optional decreasing penalty sequence; by default the grid
            runs from lambda_max(dataset) down over opts.grid_size points

    Returns:
        LassoPath; shorter than the grid when the saturation stop triggers

    Raises:
        DegenerateLambdaError: lambda_max is zero
        ConvergenceError: a grid point did not reach the KKT tolerance
    """
    opts = opts or SolverOptions()
    family = dataset.family
    if not is_standardized(dataset.X):
        raise ValueError('fit_path expects standardized covariates (mean 0, divisor-n sd 1)')
    X = np.asfortranarray(dataset.X)
    y = dataset.y
    n, q = X.shape

    null_intercepts = likelihood.intercept_only(family, dataset.y)
    zeros = np.zeros(n)
    null_deviance = float(likelihood.deviance(family, y, zeros, null_intercepts).sum())

    if lambdas is None:
        grid = lambda_grid(lambda_max(dataset), opts.grid_size, opts.grid_ratio)
        starts_at_null = True
    else:
        grid = np.asarray(lambdas, dtype=float)
        if grid.ndim != 1 or grid.size == 0 or np.any(grid <= 0) or np.any(np.diff(grid) >= 0):
            raise ValueError('lambdas must be a non-empty, positive, strictly decreasing sequence')
        starts_at_null = False

    solve = _SOLVERS[family.name]
    beta = np.zeros(q)
    intercepts = null_intercepts.copy()
    coefs, alphas, ratios = [], [], []
    total_sweeps = 0
    previous = grid[0]
    for index, lam in enumerate(grid):
        if not (index == 0 and starts_at_null):
            intercepts, beta, sweeps = _solve_screened(solve, family, X, y, intercepts, beta, lam, previous, opts)
            total_sweeps += sweeps
        previous = lam
        coefs.append(beta.copy())
        alphas.append(np.array(intercepts, dtype=float))
        eta = X @ beta
        fitted = float(likelihood.deviance(family, y, eta, intercepts).sum())
        ratio = 1.0 - fitted / null_deviance if null_deviance > 0 else 0.0
        ratios.append(ratio)
        if ratio >= opts.max_dev_ratio and index < grid.size - 1:
            logger.debug(
                f'{family} path saturated at lambda={lam:.4g} '
                f'(deviance ratio {ratio:.4f}); stopping after {index + 1} of {grid.size} points'
            )
            break

    logger.debug(f'{family} path: n={n} q={q} points={len(coefs)} sweeps={total_sweeps}')
    return LassoPath(
        lambdas=grid[:len(coefs)],
        coefs=np.vstack(coefs),
        intercepts=np.vstack(alphas),
        family=family,
        dev_ratio=np.array(ratios),
    )


def entry_lambdas(path, opts=None, zero_clip=None):
    """
    Entry value of every penalised column

    T[i] is the largest grid lambda at which |beta_i| >= zero_clip, or 0
    when the column never becomes active on the path.
    """
    if zero_clip is None:
        zero_clip = (opts or SolverOptions()).zero_clip
    active = np.abs(path.coefs) >= zero_clip
    entered = active.any(axis=0)
    first = active.argmax(axis=0)
    T = np.where(entered, path.lambdas[first], 0.0)
    return EntryStatistics(T=T, grid_resolution=path.lambdas)
