"""
Family log-likelihoods, scores and working weights

All quantities are per observation; callers average over n. For the
cumulative logit model P(Y <= k | x) = F(alpha_k + eta) with F the logistic
cdf, so an observation at level c has likelihood F(u) - F(l) with
u = alpha_c + eta and l = alpha_{c-1} + eta (alpha_{-1} = -inf,
alpha_{K-1} = +inf).
"""
import numpy as np
from scipy.special import expit, log_expit, logit

# IRLS weights are floored here, as in the reference pathwise GLM solvers
WEIGHT_FLOOR = 1e-5
_TINY = 1e-300


def intercept_only(family, y):
    """Maximum-likelihood intercepts when every penalised coefficient is zero"""
    if family.is_linear:
        return np.array([float(np.mean(y))])
    if family.is_logistic:
        rate = float(np.mean(y))
        if rate <= 0.0 or rate >= 1.0:
            raise ValueError('logistic response has a single class')
        return np.array([logit(rate)])
    counts = np.bincount(y, minlength=family.levels)
    cumulative = np.cumsum(counts)[:-1] / y.size
    if np.any(counts == 0):
        level = int(np.flatnonzero(counts == 0)[0])
        raise ValueError(f'response level {level} has no observations; cumulative logit intercepts are undefined')
    return logit(cumulative)


def _bounds(y, eta, intercepts):
    extended = np.concatenate(([-np.inf], intercepts, [np.inf]))
    return extended[y + 1] + eta, extended[y] + eta


def _interval_mass(upper, lower):
    # F(u) - F(l) computed on the tail that avoids cancellation
    with np.errstate(invalid='ignore'):
        mass = np.where(lower > 0, expit(-lower) - expit(-upper), expit(upper) - expit(lower))
    return np.maximum(mass, _TINY)


def log_likelihood(family, y, eta, intercepts):
    """Per-observation log-likelihood (Gaussian with unit variance up to a constant)"""
    if family.is_linear:
        return -0.5 * (y - intercepts[0] - eta) ** 2
    if family.is_logistic:
        t = intercepts[0] + eta
        return np.where(y == 1, log_expit(t), log_expit(-t))
    upper, lower = _bounds(y, eta, intercepts)
    return np.log(_interval_mass(upper, lower))


def deviance(family, y, eta, intercepts):
    """Per-observation deviance: squared error for linear, -2 log-likelihood otherwise"""
    if family.is_linear:
        return (y - intercepts[0] - eta) ** 2
    return -2.0 * log_likelihood(family, y, eta, intercepts)


def cumulative_terms(y, eta, intercepts):
    """
    Score and curvature of the cumulative logit log-likelihood in eta

    Returns:
        (score, weight) with score = d loglik / d eta = 1 - F(u) - F(l) and
        weight = -d^2 loglik / d eta^2 = f(u) + f(l), f = F (1 - F)
    """
    upper, lower = _bounds(y, eta, intercepts)
    f_upper = expit(upper)
    f_lower = expit(lower)
    score = 1.0 - f_upper - f_lower
    weight = f_upper * (1.0 - f_upper) + f_lower * (1.0 - f_lower)
    return score, weight


def working_score(family, y, eta, intercepts):
    """d loglik / d eta for each observation, given intercepts"""
    if family.is_linear:
        return y - intercepts[0] - eta
    if family.is_logistic:
        return y - expit(intercepts[0] + eta)
    return cumulative_terms(y, eta, intercepts)[0]


def cumulative_intercept_derivatives(y, eta, intercepts):
    """
    Gradient and Hessian of the summed cumulative logit log-likelihood in alpha

    The Hessian is tridiagonal: alpha_k only meets alpha_{k-1} and alpha_{k+1}
    through observations at the levels they bound.
    """
    m = intercepts.size
    upper, lower = _bounds(y, eta, intercepts)
    mass = _interval_mass(upper, lower)
    F_u, F_l = expit(upper), expit(lower)
    f_u, f_l = F_u * (1.0 - F_u), F_l * (1.0 - F_l)
    d_u = f_u / mass
    d_l = f_l / mass
    h_uu = f_u * (1.0 - 2.0 * F_u) / mass - d_u ** 2
    h_ll = -f_l * (1.0 - 2.0 * F_l) / mass - d_l ** 2
    h_ul = d_u * d_l

    levels = m + 1
    sum_u = np.bincount(y, weights=d_u, minlength=levels)
    sum_l = np.bincount(y, weights=d_l, minlength=levels)
    sum_uu = np.bincount(y, weights=h_uu, minlength=levels)
    sum_ll = np.bincount(y, weights=h_ll, minlength=levels)
    sum_ul = np.bincount(y, weights=h_ul, minlength=levels)

    # alpha_k is the upper bound of level k and the lower bound of level k + 1
    gradient = sum_u[:m] - sum_l[1:]
    hessian = np.diag(sum_uu[:m] + sum_ll[1:])
    for k in range(1, m):
        hessian[k, k - 1] = hessian[k - 1, k] = sum_ul[k]
    return gradient, hessian
