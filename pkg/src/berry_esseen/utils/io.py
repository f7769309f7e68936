"""
Reading inputs and writing artifacts.

Tables are written as CSV through pandas with a fixed float format, so a
rerun with the same seed reproduces the file byte for byte. JSON documents
are written with sorted keys; non-finite floats become the strings "inf",
"-inf" and "nan", which plain JSON cannot hold.
"""

import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
import pandas as pd
import yaml

from berry_esseen.core.errors import ScenarioError
from berry_esseen.core.model import parse_json

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.10g"
PathLike = Union[str, Path]


def _sanitize(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sanitize(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_sanitize(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    return value


def to_json(doc: Any) -> str:
    return json.dumps(_sanitize(doc), indent=2, sort_keys=True, allow_nan=False) + "\n"


def _emit(text: str, path: Optional[PathLike]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
    logger.info(f"Wrote {path}")


def write_json(doc: Any, path: Optional[PathLike] = None) -> None:
    """Writes `doc` as JSON to `path`, or to stdout when `path` is None."""
    _emit(to_json(doc), path)


def write_table(frame: pd.DataFrame, path: Optional[PathLike] = None, fmt: str = "csv") -> None:
    """
    Writes a table as CSV (header, no index) or as a JSON list of records.

    Raises:
        ScenarioError: If `fmt` is not "csv" or "json".
    """
    if fmt == "csv":
        _emit(frame.to_csv(index=False, float_format=FLOAT_FORMAT), path)
    elif fmt == "json":
        write_json(frame.to_dict(orient="records"), path)
    else:
        raise ScenarioError(f"Unknown output format '{fmt}'.")


def _require_file(path: PathLike) -> Path:
    path = Path(path)
    if not path.is_file():
        raise ScenarioError(f"Input file not found: {path}")
    return path


def read_document(path: PathLike) -> Any:
    """
    Parses a JSON or YAML file, chosen by suffix (.yaml/.yml means YAML).

    Raises:
        ScenarioError: If the file is missing or malformed; the message names
            the line and column of the error.
    """
    path = _require_file(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() in (".yaml", ".yml"):
        try:
            return yaml.safe_load(text)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark is not None else ""
            raise ScenarioError(f"Malformed YAML in {path}{where}: {e}") from e
    try:
        return parse_json(text)
    except ScenarioError as e:
        raise ScenarioError(f"{path}: {e}") from e


def read_column(path: PathLike) -> np.ndarray:
    """
    The first column of a CSV file as floats. A non-numeric header row and
    blank cells are skipped.
    """
    path = _require_file(path)
    try:
        frame = pd.read_csv(path, header=None, comment="#", skip_blank_lines=True)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise ScenarioError(f"Could not read numbers from {path}: {e}") from e
    column = pd.to_numeric(frame.iloc[:, 0], errors="coerce").dropna()
    if column.empty:
        raise ScenarioError(f"No numeric values in the first column of {path}.")
    return column.to_numpy(dtype=float)
