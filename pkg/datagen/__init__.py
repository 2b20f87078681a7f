"""
Simulated datasets: random-graph covariates and regression responses
"""
from datagen.graph import CovariateModel, random_graph_precision, sample_covariates
from datagen.responses import (
    ResponseSpec,
    auto_intercepts,
    block_coefficients,
    default_targets,
    leading_coefficients,
    simulate_response,
)

__all__ = [
    'CovariateModel',
    'random_graph_precision',
    'sample_covariates',
    'ResponseSpec',
    'auto_intercepts',
    'block_coefficients',
    'default_targets',
    'leading_coefficients',
    'simulate_response',
]
