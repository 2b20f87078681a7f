"""
Single change-point detectors

Both detectors split a sequence x_1..x_m into a lower segment x_1..x_b and an
upper segment x_{b+1}..x_m and return the 1-based break index b. Ties go to
the smallest index.
"""
import numpy as np

# scores within this relative distance of the optimum are treated as ties
_TIE_RTOL = 1e-9


def _rounding_floor(x):
    """Absolute error of the centred values carried over from the magnitude of x"""
    return x.size * np.finfo(float).eps * float(np.max(np.abs(x)))


def _as_sequence(x):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError('change-point detection expects a 1-D sequence')
    if x.size < 2:
        raise ValueError(f'change-point detection needs at least 2 values, got {x.size}')
    if not np.all(np.isfinite(x)):
        raise ValueError('change-point detection expects finite values')
    return x


def cusum_statistic(x):
    """Centred cumulative sums S_1..S_{m-1}"""
    x = _as_sequence(x)
    return np.cumsum(x - x.mean())[:-1]


def cusum_breakpoint(x):
    """
    Mean-shift location by the CUSUM statistic

    Returns the smallest b in 1..m-1 maximising |S_b| with
    S_b = sum_{i<=b} (x_i - mean(x)).
    """
    x = _as_sequence(x)
    magnitude = np.abs(cusum_statistic(x))
    centred = x - x.mean()
    tol = _TIE_RTOL * x.size * float(np.max(np.abs(centred))) + x.size * _rounding_floor(x)
    best = float(magnitude.max())
    return int(np.flatnonzero(magnitude >= best - tol)[0]) + 1


def split_costs(x):
    """
    Two-segment least-squares cost of every split b = 1..m-1

    Entry b-1 is SSE(x_1..x_b) + SSE(x_{b+1}..x_m), computed from prefix sums.
    """
    x = _as_sequence(x)
    centred = x - x.mean()
    m = centred.size
    sizes = np.arange(1, m)
    head_sum = np.cumsum(centred)[:-1]
    tail_sum = -head_sum
    # SSE of the whole sequence minus the between-segment term
    total = float(np.sum(centred ** 2))
    between = head_sum ** 2 / sizes + tail_sum ** 2 / (m - sizes)
    return np.maximum(total - between, 0.0)


def dp_breakpoint(x):
    """
    Optimal two-segment least-squares segmentation

    Returns the smallest b in 1..m-1 minimising
    SSE(x_1..x_b) + SSE(x_{b+1}..x_m).
    """
    x = _as_sequence(x)
    costs = split_costs(x)
    centred = x - x.mean()
    spread = float(np.sum(centred ** 2))
    tol = _TIE_RTOL * spread + 2.0 * np.sqrt(x.size * spread) * _rounding_floor(x)
    best = float(costs.min())
    return int(np.flatnonzero(costs <= best + tol)[0]) + 1
