"""Matrix files (CSV / JSON) and deterministic JSON output.

CSV: one row per line, comma-separated decimal literals; blank lines ignored.
JSON: an array of arrays of numbers. Ragged input is an error in both.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .errors import MatrixParseError
from .matrices import as_square


def _check_rows(rows: list[list[float]]) -> np.ndarray:
    if not rows:
        raise MatrixParseError("empty matrix")
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise MatrixParseError(f"ragged input: row {i} has {len(row)} entries, row 0 has {width}")
    return as_square(rows)


def parse_csv(text: str) -> np.ndarray:
    rows = []
    for lineno, record in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not record or all(not cell.strip() for cell in record):
            continue
        try:
            rows.append([float(cell) for cell in record])
        except ValueError as exc:
            raise MatrixParseError(f"line {lineno}: {exc}") from None
    return _check_rows(rows)


def parse_json(text: str) -> np.ndarray:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixParseError(f"invalid JSON: {exc}") from None
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise MatrixParseError("JSON matrix must be an array of arrays")
    for row in data:
        for x in row:
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise MatrixParseError(f"non-numeric entry {x!r}")
    return _check_rows([[float(x) for x in row] for row in data])


def read_matrix(source: str | Path, fmt: str | None = None) -> np.ndarray:
    """Read a square matrix from a path, or from stdin when ``source == "-"``.

    Without ``fmt`` the format follows the file suffix, falling back to
    sniffing for a leading ``[``.
    """
    if str(source) == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise MatrixParseError(f"cannot read {source}: {exc.strerror}") from None
    if fmt is None:
        suffix = Path(str(source)).suffix.lower()
        if suffix in (".json", ".csv"):
            fmt = suffix[1:]
        else:
            fmt = "json" if text.lstrip().startswith("[") else "csv"
    if fmt == "json":
        return parse_json(text)
    if fmt == "csv":
        return parse_csv(text)
    raise MatrixParseError(f"unknown format {fmt!r}")


def format_float(x: float) -> str:
    """17 significant digits; integral values keep a trailing ``.0``."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x}")
    if x == 0.0:
        return "0.0"
    s = format(x, ".17g")
    if "." not in s and "e" not in s:
        s += ".0"
    return s


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON serializer with fixed 17-digit floats and stable layout."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (list, tuple, dict, np.ndarray)) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent, _level + 1) for v in obj) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def format_matrix(A, fmt: str = "csv") -> str:
    A = np.asarray(A, dtype=np.float64)
    if fmt == "json":
        return dumps(A.tolist(), indent=2) + "\n"
    return "".join(",".join(format_float(x) for x in row) + "\n" for row in A)
