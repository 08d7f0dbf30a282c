"""Deterministic JSON and RFC 4180 CSV output.

Floats are rounded to 12 significant digits, complex numbers become
``[re, im]`` pairs, NaN and infinities become ``null`` and mapping order is
preserved, so equal inputs always give byte-identical documents.
"""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
import sys
from typing import Iterable, Sequence

import numpy as np

SIGNIFICANT_DIGITS = 12


def round_float(x: float) -> float | None:
    x = float(x)
    if not math.isfinite(x):
        return None
    out = float(format(x, f".{SIGNIFICANT_DIGITS}g"))
    return 0.0 if out == 0 else out


def to_jsonable(obj):
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [round_float(obj.real), round_float(obj.imag)]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if dataclasses.is_dataclass(obj):
        return to_jsonable({f.name: getattr(obj, f.name) for f in dataclasses.fields(obj)})
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    """RFC 4180 CSV (CRLF line ends, minimal quoting) with the same float rounding as JSON."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else _cell(v) for v in row])
    return buf.getvalue()


def _cell(v):
    if isinstance(v, (float, np.floating)):
        r = round_float(v)
        return "" if r is None else repr(r)
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    return v


def write_text(text: str, path: str | None, stream=None) -> None:
    """Write to ``path`` as UTF-8, or to ``stream`` (stdout) when no path is given."""
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        (stream or sys.stdout).write(text)
