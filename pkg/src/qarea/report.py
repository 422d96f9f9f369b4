"""Lossless CSV/JSON serialisation of report records and atomic file output."""
from __future__ import annotations

import csv
import io
import json
import os
import sys
import tempfile

__all__ = ["fmt", "records_to_csv", "records_from_csv", "to_json", "write_output"]


def fmt(value) -> str:
    """Format one cell; floats keep 17 significant digits."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def _parse(cell: str):
    if cell == "true":
        return True
    if cell == "false":
        return False
    if cell == "":
        return None
    try:
        return int(cell)
    except ValueError:
        pass
    try:
        return float(cell)
    except ValueError:
        return cell


def records_to_csv(records, header) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for rec in records:
        writer.writerow([fmt(rec[key]) for key in header])
    return buf.getvalue()


def records_from_csv(text: str):
    """Inverse of :func:`records_to_csv` for the value types it emits."""
    rows = list(csv.reader(io.StringIO(text)))
    header = rows[0]
    return [dict(zip(header, map(_parse, row))) for row in rows[1:]]


def to_json(payload) -> str:
    return json.dumps(payload, indent=1, sort_keys=True, allow_nan=True) + "\n"


def write_output(text: str, path=None):
    """Write ``text`` to ``path`` atomically, or to stdout when ``path`` is None."""
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qarea-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
