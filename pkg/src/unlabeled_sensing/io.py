"""CSV matrix/vector files and JSON reports.

CSV format: plain text, one matrix row per line, comma-separated decimal
floats, no header.  Vectors are single-column files.  Values are written
with 17 significant digits, which round-trips 64-bit floats exactly.

JSON reports are UTF-8 with snake_case keys and a ``schema_version`` field;
everything except the segregated ``meta`` block is a deterministic function
of the inputs.
"""

import json
from datetime import datetime, timezone

import numpy as np

SCHEMA_VERSION = 1


class CsvFormatError(ValueError):
    """Malformed CSV input, reported with file and line context."""


def _format(value):
    return format(float(value), ".17g")


def write_matrix(path, a):
    a = np.atleast_2d(np.asarray(a, dtype=float))
    with open(path, "w", encoding="utf-8") as fh:
        for row in a:
            fh.write(",".join(_format(v) for v in row))
            fh.write("\n")


def write_vector(path, v):
    write_matrix(path, np.asarray(v, dtype=float).reshape(-1, 1))


def read_matrix(path):
    """Parse a CSV matrix; raises CsvFormatError with file/line context."""
    rows = []
    width = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            tokens = line.split(",")
            try:
                row = [float(tok) for tok in tokens]
            except ValueError:
                raise CsvFormatError(
                    f"{path}:{lineno}: non-numeric token in {line!r}"
                ) from None
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise CsvFormatError(
                    f"{path}:{lineno}: expected {width} columns, got {len(row)}"
                )
            rows.append(row)
    if not rows:
        raise CsvFormatError(f"{path}: empty matrix file")
    return np.array(rows)


def read_vector(path):
    """Parse a single-column CSV file as a 1-D vector."""
    a = read_matrix(path)
    if a.shape[1] != 1:
        raise CsvFormatError(
            f"{path}: vectors must be single-column files, got {a.shape[1]} columns"
        )
    return a[:, 0]


def json_report(payload, *, timestamp=True):
    """Serialize a report dict: schema version added, timestamp segregated in meta."""
    doc = {"schema_version": SCHEMA_VERSION}
    doc.update(payload)
    if timestamp:
        meta = dict(doc.get("meta") or {})
        meta["generated_at"] = datetime.now(timezone.utc).isoformat()
        doc["meta"] = meta
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_json_report(path, payload, *, timestamp=True):
    text = json_report(payload, timestamp=timestamp)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return text


def parse_picks(text):
    """Parse a comma-separated index list like ``"2,0,1"`` into a tuple of ints."""
    try:
        picks = tuple(int(tok.strip()) for tok in str(text).split(",") if tok.strip() != "")
    except ValueError:
        raise ValueError(f"malformed index list {text!r}") from None
    if not picks:
        raise ValueError("empty index list")
    return picks
