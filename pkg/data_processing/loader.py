import os
import json
import logging
import numpy as np
import pandas as pd

from geometry.algebra import SU2Element, SO3Element
from utils.errors import UsageError

logger = logging.getLogger(__name__)


def _parse_reals(text: str, count: int, what: str) -> list[float]:
    parts = [p.strip() for p in text.split(',')]
    if len(parts) != count or any(p == '' for p in parts):
        raise UsageError(f"Error: {what} needs {count} comma-separated reals, got '{text}'.")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"Error: {what} contains a non-numeric entry: '{text}'.")
    if not all(np.isfinite(values)):
        raise UsageError(f"Error: {what} contains a non-finite entry: '{text}'.")
    return values


def parse_matrix(text: str) -> SO3Element:
    """Row-major "m11,m12,...,m33"; whitespace around entries is ignored."""
    values = _parse_reals(text, 9, 'matrix')
    return SO3Element(np.array(values).reshape(3, 3))


def parse_su2_components(text: str) -> SU2Element:
    """"a_re,a_im,b_re,b_im"."""
    return SU2Element(*_parse_reals(text, 4, 'SU(2) element'))


def load_record_table(path: str) -> pd.DataFrame:
    """Reads a CSV written by data_processing.writer without losing float digits."""
    try:
        table = pd.read_csv(path, float_precision='round_trip')
    except FileNotFoundError:
        raise FileNotFoundError(f"Error: File '{path}' not found.")
    except pd.errors.EmptyDataError:
        raise ValueError(f"Error: File '{path}' is empty or has no data.")

    table.columns = table.columns.str.strip()
    logger.info(f"File '{os.path.basename(path)}' successfully loaded. Shape: {table.shape}")
    return table


def load_json_document(path: str) -> dict:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            document = json.load(f)
    except FileNotFoundError:
        raise FileNotFoundError(f"Error: File '{path}' not found.")

    missing = {'group', 'command', 'params', 'records'} - set(document)
    if missing:
        raise ValueError(f"Error: The file '{path}' lacks the keys {sorted(missing)}.")
    return document
