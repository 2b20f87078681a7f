"""
Simulation harness: experiments, cross-validation baseline and comparisons
"""
from harness.comparison import compare_methods, paired_table
from harness.cross_validation import CVResult, assign_folds, cross_validate, cv_select
from harness.experiment import (
    ExperimentConfig,
    ExperimentReport,
    Method,
    RandomnessMode,
    Repetition,
    draw_dataset,
    experiment_graph,
    load_experiments,
    repeated_selection,
    run_experiment,
)

__all__ = [
    'compare_methods',
    'paired_table',
    'CVResult',
    'assign_folds',
    'cross_validate',
    'cv_select',
    'ExperimentConfig',
    'ExperimentReport',
    'Method',
    'RandomnessMode',
    'Repetition',
    'draw_dataset',
    'experiment_graph',
    'load_experiments',
    'repeated_selection',
    'run_experiment',
]
