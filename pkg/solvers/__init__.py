"""
Pathwise solvers package
"""
from solvers.options import SolverOptions
from solvers.path import EntryStatistics, entry_lambdas, fit_path, lambda_max

__all__ = ['SolverOptions', 'EntryStatistics', 'entry_lambdas', 'fit_path', 'lambda_max']
