"""
Weighted coordinate descent for the L1-penalised quadratic subproblem
"""
import numpy as np

from models.errors import ConvergenceError


def soft_threshold(z, gamma):
    """Proximal operator of gamma * |.|"""
    if z > gamma:
        return z - gamma
    if z < -gamma:
        return z + gamma
    return 0.0


def kkt_violation(gradient, beta, lam):
    """
    Largest violation of the L1 optimality conditions

    gradient is the derivative of the (scaled) log-likelihood in beta: it must
    equal lam * sign(beta_j) on active coordinates and stay within [-lam, lam]
    on zero coordinates.
    """
    if gradient.size == 0:
        return 0.0
    active = beta != 0
    violation = np.where(
        active,
        np.abs(gradient - lam * np.sign(beta)),
        np.maximum(np.abs(gradient) - lam, 0.0),
    )
    return float(violation.max())


def weighted_lasso(X, weights, residual, beta, lam, tol, max_sweeps, fit_intercept=False):
    """
    Minimise (1/2n) sum_i w_i r_i^2 + lam * ||beta||_1 by cyclic coordinate descent

    ``residual`` (r = z - X beta - shift) and ``beta`` are updated in place.
    Sweeps alternate between the full coordinate set and the current active
    set; the loop ends when the KKT violation of the subproblem is at most
    ``tol``.

    Args:
        X: n x q Fortran-ordered design
        weights: observation weights, or None for unit weights
        residual: working residual, modified in place
        beta: starting coefficients, modified in place
        lam: penalty level
        tol: KKT tolerance
        max_sweeps: sweep budget
        fit_intercept: also update an unpenalised intercept

    Returns:
        (intercept shift, sweeps used)

    Raises:
        ConvergenceError: the budget ran out before the tolerance was met
    """
    n, q = X.shape
    if weights is None:
        wX = X
        weight_total = float(n)
        v = np.einsum('ij,ij->j', X, X) / n
    else:
        wX = np.asfortranarray(X * weights[:, None])
        weight_total = float(weights.sum())
        v = np.einsum('ij,ij->j', wX, X) / n

    shift = 0.0
    sweeps = 0

    def sweep(coordinates):
        nonlocal shift, residual
        largest = 0.0
        for j in coordinates:
            vj = v[j]
            if vj <= 0.0:
                continue
            old = beta[j]
            z = wX[:, j] @ residual / n + vj * old
            new = soft_threshold(z, lam) / vj
            if new != old:
                residual -= (new - old) * X[:, j]
                beta[j] = new
                largest = max(largest, abs(new - old) * vj)
        if fit_intercept:
            if weights is None:
                step = residual.sum() / weight_total
            else:
                step = weights @ residual / weight_total
            if step != 0.0:
                residual -= step
                shift += step
                largest = max(largest, abs(step) * weight_total / n)
        return largest

    all_coordinates = range(q)
    while True:
        sweep(all_coordinates)
        sweeps += 1
        gradient = wX.T @ residual / n
        violation = kkt_violation(gradient, beta, lam)
        if fit_intercept:
            centre = residual.sum() if weights is None else weights @ residual
            violation = max(violation, abs(centre) / n)
        if violation <= tol:
            return shift, sweeps
        if sweeps >= max_sweeps:
            raise ConvergenceError(lam, sweeps, violation)

        active = np.flatnonzero(beta)
        while sweeps < max_sweeps:
            change = sweep(active)
            sweeps += 1
            if change < tol:
                break
