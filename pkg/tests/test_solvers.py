import numpy as np
import pytest
from scipy import optimize
from scipy.special import expit, log_expit

from models.dataset import Dataset, standardize
from models.errors import ConvergenceError, DegenerateLambdaError
from models.family import ModelFamily
from solvers import likelihood
from solvers.coordinate_descent import kkt_violation, soft_threshold, weighted_lasso
from solvers.options import SolverOptions
from solvers.path import entry_lambdas, fit_cumulative_intercepts, fit_path, lambda_max, strong_set
from tests.conftest import make_dataset


class TestSolverOptions:
    def test_defaults(self):
        opts = SolverOptions()
        assert (opts.grid_size, opts.grid_ratio, opts.tol, opts.zero_clip) == (100, 1e-3, 1e-9, 1e-8)

    @pytest.mark.parametrize('changes', [{'tol': 0.0}, {'zero_clip': 1e-12}, {'max_iter': 0}, {'grid_size': 1}])
    def test_invalid(self, changes):
        with pytest.raises(ValueError):
            SolverOptions().with_changes(**changes)

    def test_from_dict_rejects_unknown(self):
        with pytest.raises(ValueError, match='unknown solver option'):
            SolverOptions.from_dict({'alpha': 1.0})


def test_soft_threshold():
    assert soft_threshold(3.0, 1.0) == 2.0
    assert soft_threshold(-3.0, 1.0) == -2.0
    assert soft_threshold(0.5, 1.0) == 0.0


def test_weighted_lasso_budget_exhausted(rng):
    X = np.asfortranarray(rng.standard_normal((30, 4)))
    residual = rng.standard_normal(30)
    with pytest.raises(ConvergenceError) as info:
        weighted_lasso(X, None, residual, np.zeros(4), 1e-4, 1e-15, 1)
    assert info.value.iterations == 1


def test_weighted_lasso_keeps_the_residual_in_step(rng):
    X, _, _ = standardize(rng.standard_normal((40, 5)))
    X = np.asfortranarray(X)
    z = X @ np.array([1.0, -0.5, 0.0, 0.0, 0.2]) + 0.1 * rng.standard_normal(40)
    weights = rng.uniform(0.5, 1.5, 40)
    residual = z.copy()
    beta = np.zeros(5)
    shift, sweeps = weighted_lasso(X, weights, residual, beta, 0.05, 1e-10, 1000, fit_intercept=True)
    assert sweeps >= 1
    np.testing.assert_allclose(residual, z - X @ beta - shift, atol=1e-12)
    assert kkt_violation(X.T @ (weights * residual) / 40, beta, 0.05) <= 1e-10
    assert beta[0] > 0 > beta[1]


def test_strong_set():
    gradient = np.array([0.9, 0.5, 0.75, 0.1])
    beta = np.array([0.0, 0.0, 0.0, 0.3])
    # threshold 2 * 0.8 - 0.9 = 0.7
    assert strong_set(gradient, beta, 0.8, 0.9).tolist() == [0, 2, 3]


class TestLinearPath:
    def test_kkt_holds_at_every_grid_point(self):
        opts = SolverOptions(grid_size=30)
        rng = np.random.default_rng(2024)
        for _ in range(100):
            n = int(rng.integers(10, 51))
            p = int(rng.integers(1, 11))
            X, _, _ = standardize(rng.standard_normal((n, p)))
            beta = rng.normal(size=p) * (rng.random(p) < 0.5)
            data = Dataset(X, X @ beta + rng.standard_normal(n), ModelFamily.linear())
            path = fit_path(data, opts)
            assert np.all(path.coefs[0] == 0.0)
            for g in range(path.size):
                residual = data.y - path.intercepts[g, 0] - X @ path.coefs[g]
                gradient = X.T @ residual / n
                assert kkt_violation(gradient, path.coefs[g], path.lambdas[g]) <= 10 * opts.tol
                assert abs(residual.mean()) <= 10 * opts.tol

    def test_orthonormal_design_matches_soft_threshold(self):
        n, p = 64, 4
        rows = np.arange(n)
        # Walsh columns: +-1 patterns with mean 0, unit variance and X^T X / n = I
        X = np.column_stack([1.0 - 2.0 * ((rows >> j) & 1) for j in range(p)])
        rng = np.random.default_rng(5)
        y = X @ np.array([2.0, -1.0, 0.5, 0.0]) + 0.3 * rng.standard_normal(n)
        data = Dataset(X, y, ModelFamily.linear())
        path = fit_path(data, SolverOptions(grid_size=20, max_dev_ratio=1.0))
        z = X.T @ (y - y.mean()) / n
        for g, lam in enumerate(path.lambdas):
            expected = np.sign(z) * np.maximum(np.abs(z) - lam, 0.0)
            np.testing.assert_allclose(path.coefs[g], expected, atol=1e-6)

    def test_steps_shrink_as_the_grid_refines(self):
        data = make_dataset('linear', n=120, p=6, beta=[1.5, -1.0, 0.5, 0, 0, 0], seed=21)
        steps = []
        for size in (10, 20, 40, 80):
            path = fit_path(data, SolverOptions(grid_size=size, max_dev_ratio=1.0))
            steps.append(float(np.max(np.abs(np.diff(path.coefs, axis=0)))))
        assert all(finer < coarser for coarser, finer in zip(steps, steps[1:]))
        assert steps[-1] < 0.3 * steps[0]

    def test_requires_standardized_covariates(self):
        data = Dataset(np.arange(10.0).reshape(5, 2) ** 2, np.arange(5.0), ModelFamily.linear())
        with pytest.raises(ValueError, match='standardized'):
            fit_path(data)

    def test_constant_response_is_degenerate(self):
        X, _, _ = standardize(np.random.default_rng(0).standard_normal((10, 3)))
        data = Dataset(X, np.full(10, 2.0), ModelFamily.linear())
        with pytest.raises(DegenerateLambdaError):
            lambda_max(data)

    def test_explicit_lambdas(self, linear_dataset):
        path = fit_path(linear_dataset, SolverOptions(max_dev_ratio=1.0), lambdas=[0.5, 0.2, 0.1])
        assert path.lambdas.tolist() == [0.5, 0.2, 0.1]
        with pytest.raises(ValueError):
            fit_path(linear_dataset, lambdas=[0.1, 0.2])

    def test_saturation_stops_the_path(self):
        rng = np.random.default_rng(3)
        X, _, _ = standardize(rng.standard_normal((40, 3)))
        y = X @ np.array([3.0, 0.0, 0.0]) + 1e-3 * rng.standard_normal(40)
        data = Dataset(X, y, ModelFamily.linear())
        full = fit_path(data, SolverOptions(max_dev_ratio=1.0))
        short = fit_path(data, SolverOptions(max_dev_ratio=0.99))
        assert short.size < full.size
        assert short.dev_ratio[-1] >= 0.99
        np.testing.assert_array_equal(short.lambdas, full.lambdas[:short.size])


class TestEntryLambdas:
    def test_entry_values_come_from_the_grid(self, linear_dataset):
        path = fit_path(linear_dataset)
        entry = entry_lambdas(path)
        grid = set(path.lambdas.tolist())
        assert all(t == 0.0 or t in grid for t in entry.T)
        # the two relevant covariates enter first
        assert set(np.argsort(-entry.T)[:2]) == {0, 1}

    def test_never_active_is_zero(self):
        from models.lasso_path import LassoPath
        path = LassoPath([1.0, 0.5, 0.25], [[0, 0], [0, 0], [0.4, 0]], [[0], [0], [0]], ModelFamily.linear())
        entry = entry_lambdas(path, zero_clip=1e-8)
        assert entry.T.tolist() == [0.25, 0.0]

    def test_orthonormal_entry_is_the_grid_value_below_the_correlation(self):
        n, p = 64, 4
        rows = np.arange(n)
        X = np.column_stack([1.0 - 2.0 * ((rows >> j) & 1) for j in range(p)])
        y = X @ np.array([2.0, -1.0, 0.5, 0.05]) + 0.3 * np.random.default_rng(6).standard_normal(n)
        opts = SolverOptions(grid_size=25, max_dev_ratio=1.0)
        path = fit_path(Dataset(X, y, ModelFamily.linear()), opts)
        z = np.abs(X.T @ (y - y.mean()) / n)
        T = entry_lambdas(path, opts).T
        for j in range(p):
            below = path.lambdas[path.lambdas <= z[j] - opts.zero_clip]
            assert T[j] == (below.max() if below.size else 0.0)


def _logistic_mle(X, y):
    def negative(theta):
        t = theta[0] + X @ theta[1:]
        return -np.sum(np.where(y == 1, log_expit(t), log_expit(-t)))
    return optimize.minimize(negative, np.zeros(X.shape[1] + 1), method='BFGS', options={'gtol': 1e-8}).x


def _cumulative_mle(X, y, levels):
    p = X.shape[1]

    def negative(theta):
        # increments after the first intercept are kept positive through exp
        alpha = np.cumsum(np.concatenate(([theta[p]], np.exp(theta[p + 1:]))))
        extended = np.concatenate(([-np.inf], alpha, [np.inf]))
        eta = X @ theta[:p]
        mass = expit(extended[y + 1] + eta) - expit(extended[y] + eta)
        return -np.sum(np.log(np.maximum(mass, 1e-300)))

    start = np.concatenate((np.zeros(p), [-1.0], np.zeros(levels - 2)))
    theta = optimize.minimize(negative, start, method='BFGS', options={'gtol': 1e-8}).x
    return theta[:p], np.cumsum(np.concatenate(([theta[p]], np.exp(theta[p + 1:]))))


class TestGeneralisedPaths:
    def test_logistic_matches_unpenalised_mle(self):
        data = make_dataset('logistic', n=2000, p=3, beta=[1.0, -0.5, 0.0], seed=11)
        path = fit_path(data, SolverOptions(max_dev_ratio=1.0))
        expected = _logistic_mle(data.X, data.y)
        np.testing.assert_allclose(path.coefs[-1], expected[1:], atol=1e-2)
        assert abs(path.intercepts[-1, 0] - expected[0]) < 1e-2

    def test_cumulative_logit_matches_unpenalised_mle(self):
        data = make_dataset('cumlogit', n=2000, p=3, beta=[1.0, -0.5, 0.0], seed=12)
        path = fit_path(data, SolverOptions(max_dev_ratio=1.0))
        beta, alpha = _cumulative_mle(data.X, data.y, 3)
        np.testing.assert_allclose(path.coefs[-1], beta, atol=1e-2)
        np.testing.assert_allclose(path.intercepts[-1], alpha, atol=1e-2)

    @pytest.mark.parametrize('family', ['logistic', 'cumlogit'])
    def test_first_point_is_the_null_model(self, family):
        data = make_dataset(family, n=300)
        path = fit_path(data, SolverOptions(grid_size=20))
        assert np.all(path.coefs[0] == 0.0)
        np.testing.assert_allclose(path.intercepts[0], likelihood.intercept_only(data.family, data.y))
        if family == 'cumlogit':
            assert np.all(np.diff(path.intercepts, axis=1) > 0)

    def test_logistic_kkt(self):
        data = make_dataset('logistic', n=300, p=8, seed=5)
        opts = SolverOptions(grid_size=15)
        path = fit_path(data, opts)
        for g in range(path.size):
            score = data.y - expit(path.intercepts[g, 0] + data.X @ path.coefs[g])
            assert kkt_violation(data.X.T @ score / data.n, path.coefs[g], path.lambdas[g]) <= 10 * opts.tol
            assert abs(score.mean()) <= 10 * opts.tol

    def test_cumulative_kkt(self):
        data = make_dataset('cumlogit', n=300, seed=4)
        opts = SolverOptions(grid_size=15)
        path = fit_path(data, opts)
        for g in range(path.size):
            eta = data.X @ path.coefs[g]
            score, _ = likelihood.cumulative_terms(data.y, eta, path.intercepts[g])
            assert kkt_violation(data.X.T @ score / data.n, path.coefs[g], path.lambdas[g]) <= 10 * opts.tol

    def test_intercept_newton_solves_the_null_model(self):
        y = np.array([0] * 30 + [1] * 50 + [2] * 20)
        family = ModelFamily.cumulative_logit(3)
        alpha = fit_cumulative_intercepts(family, y, np.zeros(y.size), np.array([-0.1, 0.1]), 1e-12)
        np.testing.assert_allclose(expit(alpha), [0.3, 0.8], atol=1e-9)

    def test_intercept_derivatives_match_finite_differences(self):
        rng = np.random.default_rng(9)
        y = rng.integers(0, 4, size=50)
        eta = rng.standard_normal(50)
        alpha = np.array([-1.0, 0.2, 1.1])
        family = ModelFamily.cumulative_logit(4)
        gradient, hessian = likelihood.cumulative_intercept_derivatives(y, eta, alpha)
        step = 1e-6
        for k in range(3):
            shift = np.zeros(3)
            shift[k] = step
            up = likelihood.log_likelihood(family, y, eta, alpha + shift).sum()
            down = likelihood.log_likelihood(family, y, eta, alpha - shift).sum()
            assert gradient[k] == pytest.approx((up - down) / (2 * step), rel=1e-5, abs=1e-6)
            g_up, _ = likelihood.cumulative_intercept_derivatives(y, eta, alpha + shift)
            g_down, _ = likelihood.cumulative_intercept_derivatives(y, eta, alpha - shift)
            np.testing.assert_allclose(hessian[:, k], (g_up - g_down) / (2 * step), rtol=1e-4, atol=1e-5)
