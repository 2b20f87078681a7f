import numpy as np
import pandas as pd
import pytest

from models.dataset import Dataset, is_standardized, standardize
from models.errors import ConstantColumnError
from models.family import FamilyKind, ModelFamily
from models.lasso_path import LassoPath, lambda_grid


class TestModelFamily:
    def test_intercept_counts(self):
        assert ModelFamily.linear().n_intercepts == 1
        assert ModelFamily.logistic().n_intercepts == 1
        assert ModelFamily.cumulative_logit(3).n_intercepts == 2
        assert ModelFamily.cumulative_logit(5).n_intercepts == 4

    def test_cumulative_logit_needs_three_levels(self):
        with pytest.raises(ValueError):
            ModelFamily.cumulative_logit(2)

    def test_from_name(self):
        assert ModelFamily.from_name('logistic').kind is FamilyKind.LOGISTIC
        assert ModelFamily.from_name('cumlogit', 4).levels == 4
        assert str(ModelFamily.from_name('cumlogit')) == 'cumlogit(3)'
        with pytest.raises(ValueError, match='unknown family'):
            ModelFamily.from_name('poisson')


class TestDataset:
    def test_arrays_are_read_only_copies(self):
        X = np.arange(6.0).reshape(3, 2)
        data = Dataset(X, [0.0, 1.0, 2.0], ModelFamily.linear())
        X[0, 0] = 99.0
        assert data.X[0, 0] == 0.0
        with pytest.raises(ValueError):
            data.X[0, 0] = 1.0
        assert data.names == ('X1', 'X2')

    @pytest.mark.parametrize('X, y, family', [
        (np.ones((1, 2)), [0.0], ModelFamily.linear()),
        (np.empty((3, 0)), [0.0, 1.0, 2.0], ModelFamily.linear()),
        ([[1.0], [np.nan]], [0.0, 1.0], ModelFamily.linear()),
        ([[1.0], [2.0]], [0, 2], ModelFamily.logistic()),
        ([[1.0], [2.0], [3.0]], [0, 1, 3], ModelFamily.cumulative_logit(3)),
        ([[1.0], [2.0]], [0.5, 1.0], ModelFamily.logistic()),
    ])
    def test_invalid_inputs(self, X, y, family):
        with pytest.raises(ValueError):
            Dataset(np.asarray(X, dtype=float), y, family)

    def test_empty_ordinal_level_warns(self, caplog):
        with caplog.at_level('WARNING'):
            data = Dataset(np.arange(4.0).reshape(4, 1), [0, 0, 2, 2], ModelFamily.cumulative_logit(3))
        assert 'level 1 has no observations' in caplog.text
        assert data.level_counts().tolist() == [2, 0, 2]
        assert data.level_counts(np.array([True, False, True, False])).tolist() == [1, 0, 1]

    def test_frame_puts_response_last(self):
        data = Dataset([[1.0, 2.0], [3.0, 4.0]], [1, 0], ModelFamily.logistic(), ('a', 'b'))
        frame = data.to_frame()
        assert list(frame.columns) == ['a', 'b', 'y']


class TestStandardize:
    def test_hand_examples(self):
        Z, means, scales = standardize(np.array([[1.0, 2.0], [-1.0, 4.0]]))
        assert Z.tolist() == [[1.0, -1.0], [-1.0, 1.0]]
        assert means.tolist() == [0.0, 3.0]
        assert scales.tolist() == [1.0, 1.0]

    def test_constant_column(self):
        with pytest.raises(ConstantColumnError) as info:
            standardize(np.array([[5.0, 1.0], [5.0, 2.0], [5.0, 3.0]]))
        assert info.value.column == 0
        assert 'constant column 0' in str(info.value)

    def test_idempotent(self, rng):
        Z, _, _ = standardize(rng.normal(3.0, 2.0, size=(40, 5)))
        again, _, _ = standardize(Z)
        np.testing.assert_allclose(again, Z, atol=1e-12)
        assert is_standardized(Z)
        assert not is_standardized(Z + 1.0)


class TestLambdaGrid:
    def test_log_equispaced(self):
        np.testing.assert_allclose(lambda_grid(1.0, 3, 0.01), [1.0, 0.1, 0.01], rtol=1e-12)
        np.testing.assert_allclose(lambda_grid(1.0, 2, 0.5), [1.0, 0.5])

    def test_constant_ratio(self):
        grid = lambda_grid(2.7, 100, 1e-3)
        ratios = grid[1:] / grid[:-1]
        np.testing.assert_allclose(ratios, ratios[0], rtol=1e-12)
        assert grid[0] == 2.7
        assert np.all(np.diff(grid) < 0)

    @pytest.mark.parametrize('args', [(0.0, 10, 0.01), (-1.0, 10, 0.01), (1.0, 1, 0.01), (1.0, 10, 1.0)])
    def test_invalid(self, args):
        with pytest.raises(ValueError):
            lambda_grid(*args)


class TestLassoPath:
    def test_validation(self):
        family = ModelFamily.cumulative_logit(3)
        with pytest.raises(ValueError, match='strictly increasing'):
            LassoPath([1.0], [[0.0]], [[0.5, 0.1]], family)
        with pytest.raises(ValueError, match='decreasing'):
            LassoPath([1.0, 2.0], np.zeros((2, 1)), np.zeros((2, 1)), ModelFamily.linear())

    def test_frame_and_support(self):
        path = LassoPath([1.0, 0.5], [[0.0, 0.0], [0.3, 0.0]], [[0.1], [0.2]], ModelFamily.linear(), [0.0, 0.4])
        assert path.support(1).tolist() == [0]
        frame = path.to_frame(['a', 'b'])
        assert list(frame.columns) == ['lambda', 'dev_ratio', 'intercept_1', 'a', 'b']
        pd.testing.assert_series_equal(frame['a'], pd.Series([0.0, 0.3], name='a'))
