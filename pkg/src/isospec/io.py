"""File formats: matrix JSON/CSV, canonical JSON reports.

Matrix JSON carries explicit "rows"/"cols" keys and a row-major flat list
of [re, im] entry pairs.  Matrix CSV interleaves re,im columns and starts
with the format header line ``# isospec-csv-v1``.  Report JSON is written
by a small canonical serializer (sorted keys, floats at 17 significant
digits) so identical inputs produce byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import DimensionError
from .linalg import as_matrix

CSV_HEADER = "# isospec-csv-v1"


def matrix_to_jsonable(m) -> dict:
    """Matrix -> {"rows", "cols", "entries": [[re, im], ...]} (row-major)."""
    m = as_matrix(m)
    rows, cols = m.shape
    flat = m.reshape(-1)
    return {
        "rows": rows,
        "cols": cols,
        "entries": [[float(z.real), float(z.imag)] for z in flat],
    }


def jsonable_to_matrix(obj) -> np.ndarray:
    """Inverse of matrix_to_jsonable, with shape validation."""
    try:
        rows = int(obj["rows"])
        cols = int(obj["cols"])
        entries = obj["entries"]
    except (KeyError, TypeError) as exc:
        raise DimensionError(f"malformed matrix document: {exc}") from exc
    if len(entries) != rows * cols:
        raise DimensionError(
            f"matrix document claims {rows}x{cols} but has {len(entries)} entries"
        )
    flat = np.array([complex(re, im) for re, im in entries], dtype=complex)
    return flat.reshape(rows, cols)


def save_matrix_json(m, path) -> None:
    Path(path).write_text(canonical_json(matrix_to_jsonable(m)) + "\n")


def load_matrix_json(path) -> np.ndarray:
    return jsonable_to_matrix(json.loads(Path(path).read_text()))


def save_matrix_csv(m, path) -> None:
    m = as_matrix(m)
    lines = [CSV_HEADER]
    for row in m:
        cells = []
        for z in row:
            cells.append(_fmt_float(float(z.real)))
            cells.append(_fmt_float(float(z.imag)))
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n")


def load_matrix_csv(path) -> np.ndarray:
    rows = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        cells = [float(c) for c in line.split(",")]
        if len(cells) % 2 != 0:
            raise DimensionError("matrix CSV rows need an even number of columns")
        rows.append([complex(cells[i], cells[i + 1]) for i in range(0, len(cells), 2)])
    if not rows:
        raise DimensionError("matrix CSV contains no data rows")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise DimensionError("matrix CSV rows have inconsistent widths")
    return np.array(rows, dtype=complex)


def _fmt_float(x: float) -> str:
    """Fixed 17-significant-digit decimal form (round-trip exact)."""
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError("non-finite float has no canonical JSON number form")
    s = format(x, ".17g")
    # normalize negative zero for byte determinism
    return "0" if s == "-0" else s


def canonical_json(obj, indent: int = 0) -> str:
    """Deterministic JSON text: sorted keys, 17-significant-digit floats.

    Complex scalars become [re, im] pairs; numpy scalars and arrays are
    converted; non-finite floats are emitted as the strings "inf", "-inf",
    "nan" (standard JSON has no literal for them).
    """
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, bool) or isinstance(obj, np.bool_):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if x != x:
            return '"nan"'
        if x == float("inf"):
            return '"inf"'
        if x == float("-inf"):
            return '"-inf"'
        return _fmt_float(x)
    if isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        return f"[{_fmt_float(z.real)}, {_fmt_float(z.imag)}]"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return canonical_json(obj.tolist(), indent)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [canonical_json(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(inner + it for it in items) + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = []
        for key in sorted(obj):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {type(key)}")
            items.append(inner + json.dumps(key) + ": " + canonical_json(obj[key], indent + 1))
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj)} canonically")


def save_report(obj, path) -> None:
    """Write a canonical JSON report."""
    Path(path).write_text(canonical_json(obj) + "\n")
