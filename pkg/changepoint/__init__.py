"""
Change-point package: break detection on sorted statistics and thresholds
"""
from changepoint.detectors import cusum_breakpoint, cusum_statistic, dp_breakpoint, split_costs
from changepoint.thresholds import (
    DegenerateSelection,
    EmptySelection,
    SortedPositiveW,
    ThresholdMethod,
    ThresholdResult,
    ThresholdSignal,
    choose_threshold,
    format_sorted_statistics,
    gaps_threshold,
    manual_threshold,
    w_threshold,
)

__all__ = [
    'cusum_breakpoint',
    'cusum_statistic',
    'dp_breakpoint',
    'split_costs',
    'DegenerateSelection',
    'EmptySelection',
    'SortedPositiveW',
    'ThresholdMethod',
    'ThresholdResult',
    'ThresholdSignal',
    'choose_threshold',
    'format_sorted_statistics',
    'gaps_threshold',
    'manual_threshold',
    'w_threshold',
]
