"""
Numerical options shared by every pathwise fit
"""
from dataclasses import asdict, dataclass, replace


@dataclass(frozen=True)
class SolverOptions:
    """
    Grid and convergence settings for pathwise coordinate descent

    grid_size / grid_ratio define the lambda grid, tol is the KKT tolerance
    every grid point must reach, max_iter caps coordinate sweeps per grid
    point and zero_clip is the magnitude below which a coefficient is read as
    inactive. The path stops early once the explained deviance fraction
    reaches max_dev_ratio (1.0 disables the stop).
    """
    grid_size: int = 100
    grid_ratio: float = 1e-3
    tol: float = 1e-9
    max_iter: int = 100_000
    zero_clip: float = 1e-8
    max_dev_ratio: float = 0.999

    def __post_init__(self):
        if int(self.grid_size) != self.grid_size or self.grid_size < 2:
            raise ValueError(f'grid_size must be an integer >= 2, got {self.grid_size}')
        if not 0 < self.grid_ratio < 1:
            raise ValueError(f'grid_ratio must lie in (0, 1), got {self.grid_ratio}')
        if not self.tol > 0:
            raise ValueError(f'tol must be positive, got {self.tol}')
        if self.zero_clip < self.tol:
            raise ValueError(f'zero_clip ({self.zero_clip}) must be >= tol ({self.tol})')
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ValueError(f'max_iter must be a positive integer, got {self.max_iter}')
        if not 0 < self.max_dev_ratio <= 1:
            raise ValueError(f'max_dev_ratio must lie in (0, 1], got {self.max_dev_ratio}')
        object.__setattr__(self, 'grid_size', int(self.grid_size))
        object.__setattr__(self, 'max_iter', int(self.max_iter))

    @classmethod
    def from_config(cls, config, **overrides):
        """Build options from a configuration class; ``None`` overrides are ignored"""
        values = {
            'grid_size': config.SOLVER_GRID_SIZE,
            'grid_ratio': config.SOLVER_GRID_RATIO,
            'tol': config.SOLVER_TOL,
            'max_iter': config.SOLVER_MAX_ITER,
            'zero_clip': config.SOLVER_ZERO_CLIP,
            'max_dev_ratio': config.SOLVER_MAX_DEV_RATIO,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    @classmethod
    def from_dict(cls, data):
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f'unknown solver option(s): {", ".join(sorted(unknown))}')
        return cls(**data)

    def to_dict(self):
        return asdict(self)

    def with_changes(self, **changes):
        return replace(self, **changes)
