"""Delimited output with ``#``-prefixed metadata lines.

Floats are written with 12 significant digits; missing values (``None`` or
NaN) as the literal ``NA``.
"""

from __future__ import annotations

import csv
import datetime as _dt
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

import dicke_optics

NA = "NA"


def format_value(value) -> str:
    if value is None:
        return NA
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int,)) and not isinstance(value, bool):
        return str(value)
    if isinstance(value, str):
        return value
    x = float(value)
    if math.isnan(x):
        return NA
    return format(x, ".12g")


@dataclass
class Table:
    """Columns, rows and metadata for one output file."""

    name: str
    columns: list[str]
    rows: list[dict] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def column(self, name: str) -> list:
        return [row[name] for row in self.rows]

    def render(self, timestamp: bool = True) -> str:
        buf = io.StringIO()
        buf.write(f"# dicke-optics {dicke_optics.__version__}\n")
        for key, value in self.meta.items():
            buf.write(f"# {key}={format_value(value)}\n")
        if timestamp:
            now = _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0)
            buf.write(f"# generated={now.isoformat()}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_value(row.get(c)) for c in self.columns])
        return buf.getvalue()

    def write(self, directory: Path, timestamp: bool = True) -> Path:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / f"{self.name}.csv"
        path.write_text(self.render(timestamp=timestamp))
        return path


def read_table(path) -> tuple[dict, list[dict]]:
    """Return ``(meta, rows)`` with every value left as a string."""
    meta, body = {}, []
    for line in Path(path).read_text().splitlines():
        if line.startswith("#"):
            key, sep, value = line[1:].strip().partition("=")
            if sep:
                meta[key] = value
        elif line:
            body.append(line)
    return meta, list(csv.DictReader(body))


def body_lines(text: str) -> list[str]:
    """Non-comment lines of a rendered table."""
    return [line for line in text.splitlines() if not line.startswith("#")]
