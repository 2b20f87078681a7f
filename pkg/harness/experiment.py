"""
Monte-Carlo detection-rate experiments
"""
import enum
import logging
import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from changepoint.thresholds import ThresholdMethod, choose_threshold
from datagen.graph import CovariateModel, random_graph_precision, sample_covariates
from datagen.responses import (
    ResponseSpec,
    auto_intercepts,
    block_coefficients,
    leading_coefficients,
    simulate_response,
)
from harness.cross_validation import cv_select
from knockoffs.selection import select
from knockoffs.statistics import knockoff_statistics
from models.dataset import Dataset
from models.errors import ConfigError
from models.family import FamilyKind, ModelFamily
from solvers.options import SolverOptions
from utils import seeding
from utils.csv_utils import read_json, write_frame, write_json

logger = logging.getLogger(__name__)


class Method(str, enum.Enum):
    KNOCKOFF_WSTATS = 'stats'
    KNOCKOFF_GAPS = 'gaps'
    CROSS_VALIDATION = 'cv'

    @property
    def threshold_method(self):
        return {
            Method.KNOCKOFF_WSTATS: ThresholdMethod.WSTATS,
            Method.KNOCKOFF_GAPS: ThresholdMethod.GAPS,
        }.get(self)


class RandomnessMode(str, enum.Enum):
    FRESH_DATA = 'fresh_data'
    FIXED_DATA = 'fixed_data'


# family tags for seed derivation; covariate streams do not depend on them
_FAMILY_CODES = {kind: code for code, kind in enumerate(FamilyKind)}

_KNOWN_FIELDS = {
    'name', 'n', 'p', 'B', 'family', 'levels', 'beta', 'beta_leading', 'beta_blocks',
    'edge_prob', 'edge_weight', 'method', 'randomness_mode', 'base_seed', 'folds',
    'solver', 'intercepts', 'intercept_targets', 'noise_sd',
}


def _require(data, key, kind):
    if key not in data:
        raise ConfigError('missing field', field=key)
    try:
        return kind(data[key])
    except (TypeError, ValueError):
        raise ConfigError(f'expected {kind.__name__}, got {data[key]!r}', field=key) from None


def _parse_beta(data, p):
    given = [key for key in ('beta', 'beta_leading', 'beta_blocks') if key in data]
    if len(given) != 1:
        raise ConfigError('exactly one of beta, beta_leading, beta_blocks is required', field='beta')
    key = given[0]
    try:
        if key == 'beta':
            beta = np.asarray(data['beta'], dtype=float)
            if beta.shape != (p,):
                raise ConfigError(f'expected {p} coefficients, got {beta.size}', field='beta')
            return beta
        if key == 'beta_leading':
            return leading_coefficients(p, data['beta_leading'])
        blocks = data['beta_blocks']
        return block_coefficients(p, blocks['values'], int(blocks.get('block', 20)))
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(str(e), field=key) from None


@dataclass(frozen=True, eq=False)
class ExperimentConfig:
    """Parameters of one simulation study and one selection method"""
    n: int
    p: int
    B: int
    family: ModelFamily
    beta: np.ndarray
    method: Method = Method.KNOCKOFF_WSTATS
    edge_prob: float = 0.2
    edge_weight: float = 0.3
    randomness_mode: RandomnessMode = RandomnessMode.FRESH_DATA
    base_seed: int = 0
    folds: int = 10
    solver: SolverOptions = field(default_factory=SolverOptions)
    intercepts: Optional[Tuple[float, ...]] = None
    intercept_targets: Optional[Tuple[float, ...]] = None
    noise_sd: float = 1.0
    name: str = 'experiment'

    def __post_init__(self):
        object.__setattr__(self, 'method', Method(self.method))
        object.__setattr__(self, 'randomness_mode', RandomnessMode(self.randomness_mode))
        beta = np.array(self.beta, dtype=float)
        if int(self.B) != self.B or self.B < 1:
            raise ConfigError(f'must be a positive integer, got {self.B}', field='B')
        if int(self.n) != self.n or self.n < 2:
            raise ConfigError(f'must be an integer >= 2, got {self.n}', field='n')
        if beta.shape != (self.p,):
            raise ConfigError(f'beta must have length p={self.p}, got {beta.size}', field='beta')
        if not 0 <= self.edge_prob <= 1:
            raise ConfigError(f'must lie in [0, 1], got {self.edge_prob}', field='edge_prob')
        if self.method is Method.CROSS_VALIDATION and not 2 <= self.folds <= self.n:
            raise ConfigError(f'must lie in [2, n], got {self.folds}', field='folds')
        beta.setflags(write=False)
        object.__setattr__(self, 'beta', beta)
        object.__setattr__(self, 'base_seed', seeding.check_seed(self.base_seed))

    @property
    def relevant(self):
        return np.flatnonzero(self.beta != 0)

    @classmethod
    def from_dict(cls, data, method=None, solver_defaults=None):
        """
        Build a config from an experiment document

        ``method`` overrides the document's method (documents may list
        several). Unknown fields are rejected.

        Raises:
            ConfigError: missing, unknown or invalid fields
        """
        if not isinstance(data, dict):
            raise ConfigError('experiment document must be a JSON object')
        unknown = set(data) - _KNOWN_FIELDS
        if unknown:
            raise ConfigError(f'unknown field(s) {", ".join(sorted(unknown))}')
        n = _require(data, 'n', int)
        p = _require(data, 'p', int)
        B = _require(data, 'B', int)
        try:
            family = ModelFamily.from_name(data.get('family', 'linear'), data.get('levels'))
        except ValueError as e:
            raise ConfigError(str(e), field='family') from None
        if method is None:
            method = data.get('method', Method.KNOCKOFF_WSTATS.value)
            if isinstance(method, list):
                raise ConfigError('document lists several methods; pick one', field='method')
        try:
            method = Method(method)
        except ValueError:
            raise ConfigError(f'unknown method {method!r} (expected stats, gaps or cv)', field='method') from None
        try:
            mode = RandomnessMode(data.get('randomness_mode', RandomnessMode.FRESH_DATA.value))
        except ValueError:
            raise ConfigError('expected fresh_data or fixed_data', field='randomness_mode') from None
        try:
            base = solver_defaults or SolverOptions()
            solver = base.with_changes(**data.get('solver', {}))
        except (TypeError, ValueError) as e:
            raise ConfigError(str(e), field='solver') from None
        optional = {}
        for key in ('intercepts', 'intercept_targets'):
            if data.get(key) is not None:
                optional[key] = tuple(float(v) for v in data[key])
        try:
            return cls(
                n=n,
                p=p,
                B=B,
                family=family,
                beta=_parse_beta(data, p),
                method=method,
                edge_prob=float(data.get('edge_prob', 0.2)),
                edge_weight=float(data.get('edge_weight', 0.3)),
                randomness_mode=mode,
                base_seed=data.get('base_seed', 0),
                folds=int(data.get('folds', 10)),
                solver=solver,
                noise_sd=float(data.get('noise_sd', 1.0)),
                name=str(data.get('name', 'experiment')),
                **optional,
            )
        except ValueError as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError(str(e)) from None

    def to_dict(self):
        return {
            'name': self.name,
            'n': self.n,
            'p': self.p,
            'B': self.B,
            'family': self.family.name,
            'levels': self.family.levels,
            'beta': self.beta.tolist(),
            'method': self.method.value,
            'edge_prob': self.edge_prob,
            'edge_weight': self.edge_weight,
            'randomness_mode': self.randomness_mode.value,
            'base_seed': self.base_seed,
            'folds': self.folds,
            'solver': self.solver.to_dict(),
            'intercepts': list(self.intercepts) if self.intercepts else None,
            'intercept_targets': list(self.intercept_targets) if self.intercept_targets else None,
            'noise_sd': self.noise_sd,
        }


def load_experiments(path, solver_defaults=None):
    """One ExperimentConfig per method listed in the document"""
    data = read_json(path)
    if not isinstance(data, dict):
        raise ConfigError('experiment document must be a JSON object')
    methods = data.get('method', Method.KNOCKOFF_WSTATS.value)
    if not isinstance(methods, list):
        methods = [methods]
    if not methods:
        raise ConfigError('empty method list', field='method')
    return [ExperimentConfig.from_dict(data, method=m, solver_defaults=solver_defaults) for m in methods]


@dataclass(frozen=True)
class Repetition:
    """Outcome of one repetition: selected covariates and the threshold used"""
    index: int
    selected: Tuple[int, ...]
    threshold: Optional[float]
    status: str


@dataclass(eq=False)
class ExperimentReport:
    """Per-repetition selections and the detection rates they imply"""
    method: str
    names: Tuple[str, ...]
    repetitions: List[Repetition]
    beta: Optional[np.ndarray] = None
    adjacency: Optional[np.ndarray] = field(default=None, repr=False)
    config: Optional[ExperimentConfig] = field(default=None, repr=False)
    elapsed: float = 0.0

    @property
    def p(self):
        return len(self.names)

    @property
    def B(self):
        return len(self.repetitions)

    @property
    def selection_matrix(self):
        matrix = np.zeros((self.B, self.p), dtype=int)
        for row, rep in enumerate(self.repetitions):
            matrix[row, list(rep.selected)] = 1
        return matrix

    @property
    def detection_rate(self):
        return self.selection_matrix.sum(axis=0) / self.B

    @property
    def thresholds(self):
        return [rep.threshold for rep in self.repetitions]

    @property
    def empty_count(self):
        return sum(rep.status == 'empty' for rep in self.repetitions)

    @property
    def degenerate_count(self):
        return sum(rep.status == 'degenerate' for rep in self.repetitions)

    def relevant_neighbors(self):
        """Number of relevant covariates adjacent to each covariate in the graph"""
        if self.adjacency is None or self.beta is None:
            return np.zeros(self.p, dtype=int)
        relevant = (self.beta != 0).astype(int)
        return self.adjacency.astype(int) @ relevant

    def summary(self):
        rate = self.detection_rate
        summary = {
            'method': self.method,
            'B': self.B,
            'p': self.p,
            'empty_selections': self.empty_count,
            'degenerate_selections': self.degenerate_count,
            'mean_selected': float(self.selection_matrix.sum(axis=1).mean()),
        }
        if self.beta is not None:
            relevant = self.beta != 0
            summary['mean_rate_relevant'] = float(rate[relevant].mean()) if relevant.any() else None
            summary['mean_rate_null'] = float(rate[~relevant].mean()) if (~relevant).any() else None
        if self.config is not None:
            summary['config'] = self.config.to_dict()
        return summary

    def rates_frame(self):
        """Plot-ready rates: one row per covariate"""
        frame = pd.DataFrame({
            'index': np.arange(self.p),
            'name': list(self.names),
            'beta': self.beta if self.beta is not None else np.nan,
            'method': self.method,
            'rate': self.detection_rate,
        })
        if self.adjacency is not None:
            frame['relevant_neighbors'] = self.relevant_neighbors()
        return frame

    def selections_frame(self):
        frame = pd.DataFrame(self.selection_matrix, columns=list(self.names))
        frame.insert(0, 'repetition', [rep.index for rep in self.repetitions])
        frame.insert(1, 'status', [rep.status for rep in self.repetitions])
        frame.insert(2, 'threshold', [rep.threshold for rep in self.repetitions])
        return frame

    def group_summary(self):
        """Detection-rate distribution per coefficient value, largest value first"""
        if self.beta is None:
            raise ValueError('group summary needs the true coefficients')
        frame = pd.DataFrame({'beta': self.beta, 'rate': self.detection_rate})
        groups = frame.groupby('beta')['rate'].describe()
        groups = groups.rename(columns={'25%': 'q25', '50%': 'median', '75%': 'q75'})
        groups = groups.drop(columns='std').sort_index(ascending=False).reset_index()
        groups['count'] = groups['count'].astype(int)
        groups.insert(0, 'method', self.method)
        return groups

    def write(self, out_dir, prefix=''):
        """Write rates, selections, group summary and JSON summary under out_dir"""
        written = [
            write_frame(self.rates_frame(), f'{out_dir}/{prefix}rates.csv'),
            write_frame(self.selections_frame(), f'{out_dir}/{prefix}selections.csv'),
        ]
        if self.beta is not None:
            written.append(write_frame(self.group_summary(), f'{out_dir}/{prefix}groups.csv'))
        written.append(write_json(self.summary(), f'{out_dir}/{prefix}summary.json'))
        return written


def _select_from_run(W, threshold_method, threshold=None):
    result, status = choose_threshold(W, threshold_method, threshold)
    if result is None:
        return (), None, status
    chosen = tuple(int(i) for i in select(W, result.s))
    return chosen, result.s, status


def _calibrated_spec(config, X):
    family = config.family
    if family.is_linear:
        intercepts = config.intercepts or (0.0,)
    elif config.intercepts is not None:
        intercepts = config.intercepts
    else:
        intercepts = auto_intercepts(family, X, config.beta, config.intercept_targets)
    return ResponseSpec(family, config.beta, intercepts, config.noise_sd)


def draw_dataset(config, model, repetition):
    """Dataset of one repetition (repetition 0 for every fixed-data repetition)"""
    family_code = _FAMILY_CODES[config.family.kind]
    data_index = repetition if config.randomness_mode is RandomnessMode.FRESH_DATA else 0
    X = sample_covariates(model, config.n, seeding.derive_seed(config.base_seed, seeding.COVARIATES, data_index))
    spec = _calibrated_spec(config, X)
    y = simulate_response(spec, X, seeding.derive_seed(config.base_seed, seeding.RESPONSE, data_index, family_code))
    return Dataset(X, y, config.family)


def run_repetition(config, model, repetition, dataset=None):
    """One repetition: draw data (unless given), select, and record the outcome"""
    if dataset is None:
        dataset = draw_dataset(config, model, repetition)
    family_code = _FAMILY_CODES[config.family.kind]
    if config.method is Method.CROSS_VALIDATION:
        seed = seeding.derive_seed(config.base_seed, seeding.FOLDS, repetition, family_code)
        chosen = tuple(int(i) for i in cv_select(dataset, config.folds, seed, config.solver))
        status = 'ok' if chosen else 'empty'
        outcome = Repetition(repetition, chosen, None, status)
    else:
        seed = seeding.derive_seed(config.base_seed, seeding.KNOCKOFFS, repetition, family_code)
        run = knockoff_statistics(dataset, config.solver, seed)
        chosen, s, status = _select_from_run(run.W, config.method.threshold_method)
        outcome = Repetition(repetition, chosen, s, status)
    logger.debug(f'repetition {repetition}: {len(outcome.selected)} selected ({outcome.status})')
    return outcome


def experiment_graph(config):
    """Dependence structure shared by every repetition of an experiment"""
    if config.edge_prob == 0:
        return CovariateModel.independent(config.p)
    seed = seeding.derive_seed(config.base_seed, seeding.GRAPH)
    return random_graph_precision(config.p, config.edge_prob, config.edge_weight, seed)


def run_experiment(config, workers=1):
    """
    Run B repetitions and collect detection rates

    Fresh-data experiments redraw covariates, response and knockoffs (or CV
    folds) each repetition; fixed-data experiments draw one dataset and only
    redraw knockoffs or folds. Covariate streams depend on the base seed and
    repetition only, so experiments that differ by family share designs.
    Repetitions may run on several workers; results are reduced in
    repetition order.
    """
    started = time.perf_counter()
    logger.info(
        f'experiment {config.name!r}: {config.family} n={config.n} p={config.p} '
        f'B={config.B} method={config.method.value} mode={config.randomness_mode.value}'
    )
    model = experiment_graph(config)
    fixed = None
    if config.randomness_mode is RandomnessMode.FIXED_DATA:
        fixed = draw_dataset(config, model, 0)

    if workers == 1:
        repetitions = [run_repetition(config, model, r, fixed) for r in range(config.B)]
    else:
        repetitions = Parallel(n_jobs=workers)(
            delayed(run_repetition)(config, model, r, fixed) for r in range(config.B)
        )
    repetitions = sorted(repetitions, key=lambda rep: rep.index)

    report = ExperimentReport(
        method=config.method.value,
        names=tuple(f'X{j + 1}' for j in range(config.p)),
        repetitions=repetitions,
        beta=config.beta,
        adjacency=model.adjacency,
        config=config,
        elapsed=time.perf_counter() - started,
    )
    summary = report.summary()
    logger.info(
        f'experiment {config.name!r} done in {report.elapsed:.1f}s: '
        f'relevant rate {summary.get("mean_rate_relevant")}, null rate {summary.get("mean_rate_null")}, '
        f'{report.empty_count} empty, {report.degenerate_count} degenerate'
    )
    return report


def _repeat_once(dataset, method, opts, seed, index, threshold, folds):
    if method == 'cv':
        chosen = tuple(int(i) for i in cv_select(dataset, folds, seed, opts))
        return Repetition(index, chosen, None, 'ok' if chosen else 'empty')
    run = knockoff_statistics(dataset, opts, seed)
    chosen, s, status = _select_from_run(run.W, method, threshold)
    return Repetition(index, chosen, s, status)


def repeated_selection(dataset, method='stats', repeats=100, base_seed=0, opts=None,
                       threshold=None, folds=10, workers=1):
    """
    Selection frequencies over fresh knockoff draws on one fixed dataset

    Returns:
        ExperimentReport whose detection rates are the selection frequencies
    """
    opts = opts or SolverOptions()
    method = str(getattr(method, 'value', method))
    if method not in {'stats', 'gaps', 'manual', 'cv'}:
        raise ValueError(f'unknown method {method!r}')
    if int(repeats) != repeats or repeats < 1:
        raise ValueError(f'repeats must be a positive integer, got {repeats}')
    stream = seeding.FOLDS if method == 'cv' else seeding.KNOCKOFFS
    seeds = [seeding.derive_seed(base_seed, stream, r) for r in range(int(repeats))]
    logger.info(f'repeated selection: {repeats} draws, method={method}, {dataset}')
    if workers == 1:
        repetitions = [_repeat_once(dataset, method, opts, seeds[r], r, threshold, folds) for r in range(int(repeats))]
    else:
        repetitions = Parallel(n_jobs=workers)(
            delayed(_repeat_once)(dataset, method, opts, seeds[r], r, threshold, folds)
            for r in range(int(repeats))
        )
    return ExperimentReport(method=method, names=dataset.names, repetitions=sorted(repetitions, key=lambda rep: rep.index))
