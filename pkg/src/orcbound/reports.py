"""Machine-readable outputs: CSV record files and versioned JSON summaries.

All floats are serialized with 17 significant digits so every value
round-trips bit-exactly; report CSV files parse back to identical records.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Any, Iterable

from .curvature import EdgeRecord, NodeRecord

SCHEMA_VERSION = 1

EDGE_CSV_COLUMNS = ("edge_id", "cardinality", "agg", "curvature", "estimator", "time_ns", "skip_reason")
NODE_CSV_COLUMNS = ("node_id", "kappa_neighborhood", "kappa_edges", "skip_reason")


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def _json_fragment(value: Any, out: list[str]) -> None:
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        out.append(format_float(value))
    elif isinstance(value, str):
        out.append('"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(value, dict):
        out.append("{")
        for k, v in value.items():
            if out[-1] != "{":
                out.append(", ")
            _json_fragment(str(k), out)
            out.append(": ")
            _json_fragment(v, out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        first = True
        for v in value:
            if not first:
                out.append(", ")
            first = False
            _json_fragment(v, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__} to JSON")


def dumps_json(doc: dict) -> str:
    """Serialize a summary document, stamping the schema version."""
    doc = {"schema_version": SCHEMA_VERSION, **doc}
    out: list[str] = []
    _json_fragment(doc, out)
    return "".join(out) + "\n"


def write_json(doc: dict, path: str | Path) -> None:
    Path(path).write_text(dumps_json(doc), encoding="utf-8")


def _cell(value: float | int | str | None) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def write_edge_csv(records: Iterable[EdgeRecord], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(EDGE_CSV_COLUMNS)
        for r in records:
            w.writerow([
                r.edge_id, r.cardinality, _cell(r.agg), _cell(r.curvature),
                r.estimator, r.time_ns, _cell(r.skip_reason),
            ])


def read_edge_csv(path: str | Path) -> list[EdgeRecord]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != EDGE_CSV_COLUMNS:
        raise ValueError(f"{path}: not an edge report CSV")
    out = []
    for row in rows[1:]:
        out.append(EdgeRecord(
            edge_id=int(row[0]),
            cardinality=int(row[1]),
            agg=float(row[2]) if row[2] else None,
            curvature=float(row[3]) if row[3] else None,
            estimator=row[4],
            time_ns=int(row[5]),
            skip_reason=row[6] or None,
        ))
    return out


def write_node_csv(records: Iterable[NodeRecord], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(NODE_CSV_COLUMNS)
        for r in records:
            w.writerow([
                r.node_id, _cell(r.kappa_neighborhood), _cell(r.kappa_edges),
                _cell(r.skip_reason),
            ])


def read_node_csv(path: str | Path) -> list[NodeRecord]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != NODE_CSV_COLUMNS:
        raise ValueError(f"{path}: not a node report CSV")
    out = []
    for row in rows[1:]:
        out.append(NodeRecord(
            node_id=int(row[0]),
            kappa_neighborhood=float(row[1]) if row[1] else None,
            kappa_edges=float(row[2]) if row[2] else None,
            skip_reason=row[3] or None,
        ))
    return out


def write_samples_csv(
    samples: Iterable[tuple[int, float, float]],
    columns: tuple[str, str, str],
    path: str | Path,
) -> None:
    """Paired per-edge samples (id, value_a, value_b) for agreement runs."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(columns)
        for eid, a, b in samples:
            w.writerow([eid, format_float(a), format_float(b)])
