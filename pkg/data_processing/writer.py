import sys
import json
import logging
import pandas as pd

from utils.helpers import format_number_custom

logger = logging.getLogger(__name__)


def records_to_frame(records: list[dict], columns: list[str]) -> pd.DataFrame:
    """Record table with every cell already formatted as its round-trip decimal string."""
    # formatted before pandas sees them, so None is not turned into NaN
    rows = [{name: format_number_custom(record[name]) for name in columns} for record in records]
    return pd.DataFrame(rows, columns=columns, dtype=object)


def frame_to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, lineterminator='\n')


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, 'w', encoding='utf-8', newline='') as f:
        f.write(text)
    logger.info(f"Wrote {len(text)} bytes to '{out}'")


def write_csv(records: list[dict], columns: list[str], out: str | None = None):
    _emit(frame_to_csv(records_to_frame(records, columns)), out)


def json_document(group: str, command: str, params: dict, records: list[dict]) -> str:
    """Raises ValueError on NaN or infinity instead of emitting invalid JSON."""
    document = {'group': group, 'command': command, 'params': params, 'records': records}
    return json.dumps(document, allow_nan=False, indent=2) + '\n'


def write_json(group: str, command: str, params: dict, records: list[dict], out: str | None = None):
    _emit(json_document(group, command, params, records), out)
