"""
Regression families supported by the pathwise solvers
"""
from dataclasses import dataclass
from enum import Enum


class FamilyKind(str, Enum):
    LINEAR = 'linear'
    LOGISTIC = 'logistic'
    CUMULATIVE_LOGIT = 'cumlogit'


@dataclass(frozen=True)
class ModelFamily:
    """Response model: linear, logistic or cumulative logit (proportional odds)

    ``levels`` is the number of response levels: 2 for logistic, K >= 3 for
    cumulative logit, and unused (0) for linear regression.
    """
    kind: FamilyKind
    levels: int = 0

    def __post_init__(self):
        kind = FamilyKind(self.kind)
        object.__setattr__(self, 'kind', kind)
        if kind is FamilyKind.CUMULATIVE_LOGIT:
            if self.levels < 3:
                raise ValueError(f'cumulative logit needs at least 3 levels, got {self.levels}')
        elif kind is FamilyKind.LOGISTIC:
            object.__setattr__(self, 'levels', 2)
        else:
            object.__setattr__(self, 'levels', 0)

    @classmethod
    def linear(cls):
        return cls(FamilyKind.LINEAR)

    @classmethod
    def logistic(cls):
        return cls(FamilyKind.LOGISTIC)

    @classmethod
    def cumulative_logit(cls, levels=3):
        return cls(FamilyKind.CUMULATIVE_LOGIT, levels)

    @classmethod
    def from_name(cls, name, levels=None):
        """Build a family from its CLI/config name (linear, logistic, cumlogit)"""
        try:
            kind = FamilyKind(str(name).lower())
        except ValueError:
            choices = ', '.join(k.value for k in FamilyKind)
            raise ValueError(f'unknown family {name!r} (expected one of {choices})') from None
        if kind is FamilyKind.CUMULATIVE_LOGIT:
            return cls(kind, 3 if levels is None else int(levels))
        return cls(kind)

    @property
    def name(self):
        return self.kind.value

    @property
    def n_intercepts(self):
        """Number of unpenalised intercepts (K - 1 for cumulative logit, else 1)"""
        if self.kind is FamilyKind.CUMULATIVE_LOGIT:
            return self.levels - 1
        return 1

    @property
    def is_linear(self):
        return self.kind is FamilyKind.LINEAR

    @property
    def is_logistic(self):
        return self.kind is FamilyKind.LOGISTIC

    @property
    def is_ordinal(self):
        return self.kind is FamilyKind.CUMULATIVE_LOGIT

    def __str__(self):
        if self.is_ordinal:
            return f'{self.name}({self.levels})'
        return self.name
