"""
Automatic and manual thresholds on the sorted positive statistics
"""
import enum
import logging
from dataclasses import dataclass, field
from typing import Dict

import numpy as np
import pandas as pd

from changepoint.detectors import cusum_breakpoint, dp_breakpoint

logger = logging.getLogger(__name__)

# change detection needs at least this many positive statistics
MIN_POSITIVE = 3

DETECTORS = {
    'cusum': cusum_breakpoint,
    'dp': dp_breakpoint,
}


class ThresholdMethod(str, enum.Enum):
    WSTATS = 'stats'
    GAPS = 'gaps'
    MANUAL = 'manual'

    @classmethod
    def from_name(cls, name):
        try:
            return cls(str(name).lower())
        except ValueError:
            choices = ', '.join(m.value for m in cls)
            raise ValueError(f'unknown threshold method {name!r} (expected one of {choices})') from None


@dataclass(frozen=True, eq=False)
class SortedPositiveW:
    """Strictly positive statistics in ascending order, with their covariate indices"""
    values: np.ndarray
    indices: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        indices = np.array(self.indices, dtype=int)
        if values.shape != indices.shape or values.ndim != 1:
            raise ValueError('values and indices must be vectors of equal length')
        if np.any(values <= 0):
            raise ValueError('sorted statistics must be strictly positive')
        if np.any(np.diff(values) < 0):
            raise ValueError('sorted statistics must be non-decreasing')
        values.setflags(write=False)
        indices.setflags(write=False)
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, 'indices', indices)

    @classmethod
    def from_statistics(cls, W):
        """Keep W_i > 0 and sort ascending (ties by covariate index)"""
        W = np.asarray(W, dtype=float)
        positive = np.flatnonzero(W > 0)
        order = positive[np.argsort(W[positive], kind='stable')]
        return cls(values=W[order], indices=order)

    @property
    def w(self):
        return self.values.size

    @property
    def gaps(self):
        return np.diff(self.values)

    def to_frame(self, names=None):
        rank = np.arange(1, self.w + 1)
        frame = pd.DataFrame({'rank': rank, 'index': self.indices, 'W': self.values})
        if names is not None:
            frame.insert(2, 'name', [names[i] for i in self.indices])
        return frame


class ThresholdSignal(Exception):
    """Raised when change detection cannot run on the positive statistics"""

    def __init__(self, message, sorted_w):
        super().__init__(message)
        self.sorted_w = sorted_w


class EmptySelection(ThresholdSignal):
    """No strictly positive statistic"""

    def __init__(self, sorted_w):
        super().__init__('no positive statistic: empty selection', sorted_w)


class DegenerateSelection(ThresholdSignal):
    """One or two positive statistics; every positive covariate is kept at s = W_(1)"""

    def __init__(self, sorted_w):
        super().__init__(
            f'only {sorted_w.w} positive statistic(s): selecting all positive covariates',
            sorted_w,
        )
        self.s = float(sorted_w.values[0])


@dataclass(frozen=True)
class ThresholdResult:
    s: float
    method: ThresholdMethod
    breakpoints: Dict[str, float] = field(default_factory=dict)
    break_indices: Dict[str, int] = field(default_factory=dict)

    def to_dict(self):
        return {
            's': self.s,
            'method': self.method.value,
            'breakpoints': dict(self.breakpoints),
            'break_indices': dict(self.break_indices),
        }


def _check_detectable(sorted_w):
    if sorted_w.w == 0:
        raise EmptySelection(sorted_w)
    if sorted_w.w < MIN_POSITIVE:
        raise DegenerateSelection(sorted_w)


def _min_rule(sorted_w, sequence, offset, method):
    candidates, breaks = {}, {}
    for name, detector in DETECTORS.items():
        b = detector(sequence)
        # 1-based b on the sequence maps to W_(b + offset), i.e. values[b + offset - 1]
        candidates[name] = float(sorted_w.values[b + offset - 1])
        breaks[name] = b
    s = min(candidates.values())
    logger.debug(f'{method.value} threshold: candidates={candidates} s={s:.6g}')
    return ThresholdResult(s=s, method=method, breakpoints=candidates, break_indices=breaks)


def w_threshold(sorted_w):
    """
    Threshold from change detection on the sorted statistics

    Each detector's break b gives the candidate W_(b+1), the smallest value of
    the upper segment. The threshold is the smaller candidate.

    Raises:
        EmptySelection: no positive statistic
        DegenerateSelection: fewer than three positive statistics
    """
    _check_detectable(sorted_w)
    return _min_rule(sorted_w, sorted_w.values, 1, ThresholdMethod.WSTATS)


def gaps_threshold(sorted_w):
    """
    Threshold from change detection on the gaps between sorted statistics

    A break b on the gaps e_1..e_{w-1} puts e_{b+1} = W_(b+2) - W_(b+1) first
    in the upper segment, so the candidate is W_(b+2).

    Raises:
        EmptySelection: no positive statistic
        DegenerateSelection: fewer than three positive statistics
    """
    _check_detectable(sorted_w)
    return _min_rule(sorted_w, sorted_w.gaps, 2, ThresholdMethod.GAPS)


def manual_threshold(s):
    if not s > 0:
        raise ValueError(f'threshold must be positive, got {s}')
    return ThresholdResult(s=float(s), method=ThresholdMethod.MANUAL)


def choose_threshold(W, method, s=None):
    """
    Threshold for a W vector by method name

    Returns:
        (ThresholdResult or None, status) where status is 'ok', 'empty' or
        'degenerate'. Degenerate results carry s = W_(1) and the requested
        method; empty results return None.
    """
    method = ThresholdMethod.from_name(method) if not isinstance(method, ThresholdMethod) else method
    if method is ThresholdMethod.MANUAL:
        if s is None:
            raise ValueError('manual thresholding needs a threshold value')
        return manual_threshold(s), 'ok'
    sorted_w = SortedPositiveW.from_statistics(W)
    compute = w_threshold if method is ThresholdMethod.WSTATS else gaps_threshold
    try:
        return compute(sorted_w), 'ok'
    except DegenerateSelection as signal:
        logger.debug(str(signal))
        return ThresholdResult(s=signal.s, method=method), 'degenerate'
    except EmptySelection as signal:
        logger.debug(str(signal))
        return None, 'empty'


def format_sorted_statistics(sorted_w, s=None, names=None):
    """
    Text table of the positive statistics, largest first, with a line
    marking the threshold
    """
    lines = [f'{"rank":>4}  {"covariate":<12} {"W":>14}']
    marked = s is None
    for rank in range(sorted_w.w - 1, -1, -1):
        value = float(sorted_w.values[rank])
        if not marked and value < s:
            lines.append(f'{"-" * 34} s = {s:.6g}')
            marked = True
        index = int(sorted_w.indices[rank])
        label = names[index] if names is not None else f'X{index + 1}'
        lines.append(f'{sorted_w.w - rank:>4}  {label:<12} {value:>14.6g}')
    if not marked:
        lines.append(f'{"-" * 34} s = {s:.6g}')
    return '\n'.join(lines)
