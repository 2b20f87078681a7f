"""
Models package initialization
"""
from models.errors import (
    ConfigError,
    ConstantColumnError,
    ConvergenceError,
    DataFormatError,
    DegenerateLambdaError,
    PermknockError,
)
from models.family import FamilyKind, ModelFamily
from models.dataset import Dataset, is_standardized, standardize
from models.lasso_path import LassoPath, lambda_grid

__all__ = [
    'ConfigError',
    'ConstantColumnError',
    'ConvergenceError',
    'DataFormatError',
    'DegenerateLambdaError',
    'PermknockError',
    'FamilyKind',
    'ModelFamily',
    'Dataset',
    'is_standardized',
    'standardize',
    'LassoPath',
    'lambda_grid',
]
