"""Tabular dataset loading (CSV / TSV / JSON records)."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import FormatError, IoError

FORMATS = ("csv", "tsv", "json")


@dataclass(frozen=True)
class Dataset:
    """Raw rows plus column order; cell values are kept as loaded."""

    name: str
    columns: tuple[str, ...]
    rows: tuple[dict, ...] = field(repr=False)
    source_format: str = "csv"

    @property
    def row_count(self) -> int:
        return len(self.rows)


def _guess_format(path: Path) -> str:
    ext = path.suffix.lower().lstrip(".")
    if ext == "tsv":
        return "tsv"
    if ext == "json":
        return "json"
    return "csv"


def _load_delimited(text: str, delimiter: str, name: str) -> tuple[tuple[str, ...], tuple[dict, ...]]:
    reader = csv.reader(io.StringIO(text), delimiter=delimiter)
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError(f"{name}: empty file") from None
    columns = tuple(col.strip() for col in header)
    if not all(columns):
        raise FormatError(f"{name}: blank column name in header")
    if len(set(columns)) != len(columns):
        raise FormatError(f"{name}: duplicate column names after trimming")
    rows = []
    for row in reader:
        if not row:
            continue
        if len(row) != len(columns):
            raise FormatError(
                f"{name}: line {reader.line_num}: expected {len(columns)} "
                f"fields, got {len(row)}")
        rows.append(dict(zip(columns, row)))
    return columns, tuple(rows)


def _load_json_records(text: str, name: str) -> tuple[tuple[str, ...], tuple[dict, ...]]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{name}: invalid JSON: {exc}") from exc
    if not isinstance(payload, list) or not payload:
        raise FormatError(f"{name}: expected a non-empty top-level array of objects")
    first = payload[0]
    if not isinstance(first, dict):
        raise FormatError(f"{name}: records must be objects")
    columns = tuple(str(key).strip() for key in first)
    if len(set(columns)) != len(columns):
        raise FormatError(f"{name}: duplicate column names after trimming")
    key_set = set(first)
    rows = []
    for i, record in enumerate(payload):
        if not isinstance(record, dict) or set(record) != key_set:
            raise FormatError(f"{name}: record {i} does not share the keys of record 0")
        if any(isinstance(v, (dict, list)) for v in record.values()):
            raise FormatError(f"{name}: record {i} is not flat")
        rows.append({col: record[raw] for col, raw in zip(columns, first)})
    return columns, tuple(rows)


def load_dataset(source, format: str | None = None, name: str | None = None) -> Dataset:
    """Load a Dataset from a file path or a readable text/byte stream.

    Empty cells are preserved as empty values; ragged delimited rows and
    JSON records with mismatched keys raise FormatError.
    """
    if hasattr(source, "read"):
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
        fmt = (format or "csv").lower()
        ds_name = name or "dataset"
    else:
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise IoError(f"cannot read {path}: {exc}") from exc
        fmt = (format or _guess_format(path)).lower()
        ds_name = name or path.stem
    if fmt not in FORMATS:
        raise FormatError(f"unsupported format {fmt!r}; expected one of {FORMATS}")
    if fmt == "json":
        columns, rows = _load_json_records(text, ds_name)
    else:
        columns, rows = _load_delimited(text, "\t" if fmt == "tsv" else ",", ds_name)
    return Dataset(name=ds_name, columns=columns, rows=rows, source_format=fmt)
