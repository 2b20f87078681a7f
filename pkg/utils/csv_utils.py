"""
CSV and JSON input/output helpers
"""
import json
import logging
from pathlib import Path

import numpy as np
import pandas as pd

from models.dataset import Dataset
from models.errors import DataFormatError
from models.family import ModelFamily

logger = logging.getLogger(__name__)

RESPONSE_COLUMN = 'y'
FLOAT_FORMAT = '%.17g'


def read_dataset_csv(path, family, levels=None):
    """
    Load a dataset from CSV: a header row, a `y` column, covariates in file order

    Args:
        path: CSV file
        family: ModelFamily or family name
        levels: number of ordinal levels (inferred from y when omitted)

    Raises:
        DataFormatError: missing or malformed values, with the offending
            data row (1-based) and column
    """
    path = Path(path)
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
    except FileNotFoundError:
        raise DataFormatError(f'no such file: {path}') from None
    except pd.errors.EmptyDataError:
        raise DataFormatError(f'{path} is empty') from None
    except pd.errors.ParserError as e:
        raise DataFormatError(f'cannot parse {path}: {e}') from None

    frame.columns = [str(c).strip() for c in frame.columns]
    if RESPONSE_COLUMN not in frame.columns:
        raise DataFormatError(f'{path} has no response column', field=RESPONSE_COLUMN)
    if frame.columns.duplicated().any():
        duplicate = frame.columns[frame.columns.duplicated()][0]
        raise DataFormatError(f'duplicate column in {path}', field=duplicate)
    covariates = [c for c in frame.columns if c != RESPONSE_COLUMN]
    if not covariates:
        raise DataFormatError(f'{path} has no covariate columns')
    if frame.empty:
        raise DataFormatError(f'{path} has a header but no data rows')

    numeric = {}
    for column in frame.columns:
        values = pd.to_numeric(frame[column].str.strip(), errors='coerce')
        bad = values.isna() | ~np.isfinite(values.to_numpy(dtype=float))
        if bad.any():
            row = int(np.flatnonzero(bad.to_numpy())[0])
            raise DataFormatError(
                f'non-numeric or non-finite value {frame[column].iloc[row]!r}',
                row=row + 1,
                field=column,
            )
        numeric[column] = values.to_numpy(dtype=float)

    y = numeric[RESPONSE_COLUMN]
    if not isinstance(family, ModelFamily):
        if levels is None and str(family).lower() == 'cumlogit':
            levels = int(y.max()) + 1 if np.all(y == np.round(y)) else None
        family = ModelFamily.from_name(family, levels)
    X = np.column_stack([numeric[c] for c in covariates])
    try:
        dataset = Dataset(X, y, family, tuple(covariates))
    except ValueError as e:
        raise DataFormatError(str(e), field=RESPONSE_COLUMN if 'response' in str(e) else None) from e
    logger.info(f'loaded {dataset} from {path}')
    return dataset


def write_dataset_csv(dataset, path):
    """Write a dataset in the layout read_dataset_csv expects"""
    return write_frame(dataset.to_frame(), path)


def write_frame(frame, path):
    """Write a frame as CSV with full float precision and no index"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    logger.debug(f'wrote {len(frame)} rows to {path}')
    return path


def _to_builtin(value):
    if isinstance(value, dict):
        return {str(k): _to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_builtin(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_to_builtin(v) for v in value.tolist()]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def write_json(data, path):
    """Write a JSON document with sorted keys"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as handle:
        json.dump(_to_builtin(data), handle, indent=2, sort_keys=True)
        handle.write('\n')
    return path


def read_json(path):
    """
    Load a JSON document

    Raises:
        DataFormatError: unreadable file or invalid JSON, with line and column
    """
    path = Path(path)
    try:
        with open(path, encoding='utf-8') as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise DataFormatError(f'no such file: {path}') from None
    except json.JSONDecodeError as e:
        raise DataFormatError(f'invalid JSON in {path}: {e.msg} at column {e.colno}', row=e.lineno) from None
