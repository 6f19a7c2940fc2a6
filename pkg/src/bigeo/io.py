"""Flat-file formats: node tables, divided-difference tables, matrices,
sequences and evaluation grids.

Node files are CSV with header ``x,f[,fprime|dgf]`` (``#`` starts a comment
line) or JSON: a list of objects with the same keys, optionally wrapped as
``{"nodes": [...]}``.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .core import GeoReal
from .errors import ParseError
from .hermite import BigeoPolynomial, DividedDiffTable, HermiteData


@dataclass(frozen=True)
class NodeRecord:
    x: float
    f: float
    fprime: Optional[float] = None
    dgf: Optional[float] = None

    def __post_init__(self):
        if not (self.x > 0 and math.isfinite(self.x)):
            raise ParseError(f"x must be a positive real, got {self.x}")
        if not (self.f > 0 and math.isfinite(self.f)):
            raise ParseError(f"f must be a positive real, got {self.f}")
        if self.fprime is not None and self.dgf is not None:
            raise ParseError(f"node x={self.x} gives both fprime and dgf")
        if self.dgf is not None and not self.dgf > 0:
            raise ParseError(f"dgf must be positive, got {self.dgf}")


def _num(value, what: str, line) -> Optional[float]:
    if value is None:
        return None
    if isinstance(value, str):
        value = value.strip()
        if value == "":
            return None
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ParseError(f"line {line}: {what}={value!r} is not a number") from None


def _record(row: dict, line) -> NodeRecord:
    if "x" not in row or "f" not in row:
        raise ParseError(f"line {line}: missing x or f")
    x = _num(row.get("x"), "x", line)
    f = _num(row.get("f"), "f", line)
    if x is None or f is None:
        raise ParseError(f"line {line}: missing x or f")
    return NodeRecord(x, f, _num(row.get("fprime"), "fprime", line),
                      _num(row.get("dgf"), "dgf", line))


def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            yield lineno, stripped


def parse_nodes_csv(text: str) -> list[NodeRecord]:
    lines = list(_data_lines(text))
    if not lines:
        raise ParseError("no data in node file")
    header = [h.strip() for h in lines[0][1].split(",")]
    allowed = {"x", "f", "fprime", "dgf"}
    if not {"x", "f"} <= set(header) or not set(header) <= allowed:
        raise ParseError(f"header must be x,f[,fprime|dgf], got {','.join(header)}")
    if len(lines) < 2:
        raise ParseError("node file has a header but no rows")
    records = []
    for lineno, text_line in lines[1:]:
        cells = next(csv.reader([text_line]))
        if len(cells) != len(header):
            raise ParseError(f"line {lineno}: expected {len(header)} fields, got {len(cells)}")
        records.append(_record(dict(zip(header, cells)), lineno))
    return records


def parse_nodes_json(text: str) -> list[NodeRecord]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if isinstance(doc, dict):
        doc = doc.get("nodes")
    if not isinstance(doc, list) or not doc:
        raise ParseError("JSON node file must hold a non-empty list of nodes")
    out = []
    for i, row in enumerate(doc):
        if not isinstance(row, dict):
            raise ParseError(f"node {i} is not an object")
        out.append(_record(row, f"node {i}"))
    return out


def read_nodes(path) -> list[NodeRecord]:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json" or text.lstrip().startswith(("[", "{")):
        return parse_nodes_json(text)
    return parse_nodes_csv(text)


def records_to_data(records: list[NodeRecord], function=None) -> HermiteData:
    return HermiteData.from_values(
        [r.x for r in records], [r.f for r in records],
        dgfs=[r.dgf for r in records], fprimes=[r.fprime for r in records],
        function=function)


def parse_grid(spec: str) -> list[float]:
    """``A:B:STEP`` inclusive of ``B`` up to rounding."""
    try:
        a, b, step = (float(p) for p in spec.split(":"))
    except ValueError:
        raise ParseError(f"grid must be A:B:STEP, got {spec!r}") from None
    if not step > 0 or b < a:
        raise ParseError(f"grid {spec!r} needs STEP > 0 and B >= A")
    count = int(math.floor((b - a) / step + 1e-9)) + 1
    return [a + i * step for i in range(count)]


def parse_points(spec: str) -> list[float]:
    try:
        return [float(p) for p in spec.split(",") if p.strip()]
    except ValueError:
        raise ParseError(f"bad point list {spec!r}") from None


# divided-difference table and coefficients

TABLE_HEADER = ["column", "index", "z_left", "z_right", "value", "log_value", "z_left_log"]


def table_rows(table: DividedDiffTable):
    for c, col in enumerate(table.columns):
        for i, v in enumerate(col):
            yield [c, i, table.z[i].to_real(), table.z[i + c].to_real(),
                   v.to_real(), v.log_value, table.z[i].log_value]


def write_table_csv(table: DividedDiffTable, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(TABLE_HEADER)
    for row in table_rows(table):
        w.writerow([row[0], row[1]] + [repr(float(v)) for v in row[2:]])


def read_table_csv(fh) -> DividedDiffTable:
    """Inverse of :func:`write_table_csv`; values are rebuilt from ``log_value``."""
    rows = list(csv.DictReader(fh))
    if not rows:
        raise ParseError("empty table file")
    try:
        size = max(int(r["index"]) for r in rows if int(r["column"]) == 0) + 1
        columns = [[None] * (size - c) for c in range(size)]
        z_logs = [None] * size
        for r in rows:
            c, i = int(r["column"]), int(r["index"])
            columns[c][i] = GeoReal(float(r["log_value"]))
            if c == 0:
                z_logs[i] = float(r["z_left_log"])
    except (KeyError, ValueError, IndexError) as exc:
        raise ParseError(f"malformed table file: {exc}") from None
    if any(v is None for col in columns for v in col) or None in z_logs:
        raise ParseError("table file is missing entries")
    return DividedDiffTable([GeoReal(t) for t in z_logs], columns)


def write_coeffs_csv(poly: BigeoPolynomial, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["k", "center", "coeff", "log_coeff"])
    for k, a in enumerate(poly.coeffs):
        center = repr(poly.centers[k - 1].to_real()) if k > 0 else ""
        w.writerow([k, center, repr(a.to_real()), repr(a.log_value)])


# matrices and sequences

def _numeric_rows(text: str) -> list[list[float]]:
    rows = []
    for lineno, line in _data_lines(text):
        cells = [c.strip() for c in line.split(",")]
        try:
            rows.append([float(c) for c in cells])
        except ValueError:
            raise ParseError(f"line {lineno}: non-numeric entry") from None
    if not rows:
        raise ParseError("no numeric rows")
    return rows


def read_matrix(path) -> np.ndarray:
    """CSV of positive reals, one matrix row per line."""
    rows = _numeric_rows(Path(path).read_text(encoding="utf-8"))
    if len({len(r) for r in rows}) != 1:
        raise ParseError("matrix rows have differing lengths")
    arr = np.array(rows)
    if np.any(~(arr > 0)):
        raise ParseError("matrix entries must be positive")
    return arr


def read_sequence(path) -> np.ndarray:
    """Positive reals, either one per line or comma separated."""
    rows = _numeric_rows(Path(path).read_text(encoding="utf-8"))
    arr = np.array([v for r in rows for v in r])
    if np.any(~(arr > 0)):
        raise ParseError("sequence terms must be positive")
    return arr


def write_rows(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()
