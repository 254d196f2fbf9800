"""Deterministic emitters: 17-significant-digit floats, fixed key order, LF.

The JSON writer is deliberately tiny rather than json.dumps so float
formatting is pinned to %.17g; identical inputs produce byte-identical files.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

__all__ = ["fmt", "dumps_json", "write_json", "write_csv"]


def fmt(x: float) -> str:
    """A float at 17 significant digits (lossless round trip)."""
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return f"{x:.17g}"


def _encode(obj, out: list, indent: int) -> None:
    pad = "  " * indent
    if obj is None:
        out.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(fmt(float(obj)))
    elif isinstance(obj, str):
        out.append('"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        items = list(obj.items())
        for i, (k, v) in enumerate(items):
            out.append(pad + '  "' + str(k) + '": ')
            _encode(v, out, indent + 1)
            out.append(",\n" if i + 1 < len(items) else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(seq):
            out.append(pad + "  ")
            _encode(v, out, indent + 1)
            out.append(",\n" if i + 1 < len(seq) else "\n")
        out.append(pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_json(obj) -> str:
    out: list[str] = []
    _encode(obj, out, 0)
    out.append("\n")
    return "".join(out)


def write_json(path, obj) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(dumps_json(obj))
    return path


def write_csv(path, header: list[str], columns: list) -> Path:
    """Column-oriented CSV; all columns must share a length."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    cols = [np.asarray(c) for c in columns]
    n = cols[0].size
    if any(c.size != n for c in cols):
        raise ValueError("csv columns have mismatched lengths")
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for i in range(n):
            fh.write(",".join(fmt(float(c[i])) for c in cols) + "\n")
    return path
