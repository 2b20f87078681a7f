"""
Permutation knockoffs package
"""
from knockoffs.construction import column_moments, design_correlation, make_knockoffs
from knockoffs.selection import importance_order, select
from knockoffs.statistics import KnockoffRun, knockoff_statistics, signed_statistics

__all__ = [
    'column_moments',
    'design_correlation',
    'make_knockoffs',
    'importance_order',
    'select',
    'KnockoffRun',
    'knockoff_statistics',
    'signed_statistics',
]
