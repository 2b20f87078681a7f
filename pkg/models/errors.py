"""
Error types shared across the package
"""


class PermknockError(Exception):
    """Base class for all package errors"""


class DataFormatError(PermknockError, ValueError):
    """Malformed input data (CSV or JSON)"""

    def __init__(self, message, row=None, field=None):
        self.row = row
        self.field = field
        location = []
        if row is not None:
            location.append(f'row {row}')
        if field is not None:
            location.append(f'field {field!r}')
        if location:
            message = f'{message} ({", ".join(location)})'
        super().__init__(message)


class ConfigError(PermknockError, ValueError):
    """Invalid experiment configuration"""

    def __init__(self, message, field=None):
        self.field = field
        if field is not None:
            message = f'{field}: {message}'
        super().__init__(message)


class ConstantColumnError(PermknockError, ValueError):
    """A covariate column has zero variance"""

    def __init__(self, column):
        self.column = column
        super().__init__(f'constant column {column}')


class DegenerateLambdaError(PermknockError, ArithmeticError):
    """lambda_max is zero: the all-zero solution holds for every penalty"""


class ConvergenceError(PermknockError, ArithmeticError):
    """Coordinate descent did not reach the KKT tolerance"""

    def __init__(self, lambda_, iterations, violation=None):
        self.lambda_ = lambda_
        self.iterations = iterations
        self.violation = violation
        message = f'no convergence at lambda={lambda_:.6g} after {iterations} sweeps'
        if violation is not None:
            message += f' (KKT violation {violation:.3g})'
        super().__init__(message)
