# util/reports.py

import csv
import json
import logging
import math
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from rich import box
from rich.console import Console
from rich.table import Table

# ---------------- Logging ----------------
LOG = logging.getLogger("kahlermix.reports")

SCHEMA = "v1"
console = Console()


def finite_or_marker(x: float):
    """JSON has no infinities: emit them as the strings "-inf" / "inf"."""
    if isinstance(x, float) and math.isinf(x):
        return "-inf" if x < 0 else "inf"
    return x


def _clean(value: Any):
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return finite_or_marker(value)
    if isinstance(value, Mapping):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def dumps(payload: Mapping[str, Any]) -> str:
    data = {"schema": SCHEMA, **_clean(payload)}
    return json.dumps(data, sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_json(path, payload: Mapping[str, Any]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dumps(payload))
    LOG.info("Wrote %s", path)
    return path


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return repr(value) if math.isfinite(value) else str(finite_or_marker(value))
    return str(value)


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
    LOG.info("Wrote %s", path)
    return path


# ---------------- Console ----------------
def fmt(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.10g}" if math.isfinite(value) else str(finite_or_marker(value))
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(fmt(v) for v in value) + ")"
    if value is None:
        return "-"
    return str(value)


def print_table(title: str, columns: Sequence[str], rows: Iterable[Sequence[Any]]):
    table = Table(box=box.SIMPLE, title=title, show_header=True, header_style="bold magenta")
    for i, col in enumerate(columns):
        table.add_column(col, justify="right" if i else "left")
    for row in rows:
        table.add_row(*(fmt(v) for v in row))
    console.print(table)


def print_summary(title: str, items: Mapping[str, Any]):
    console.rule(f"[bold magenta]{title}[/bold magenta]")
    table = Table(box=box.SIMPLE, show_header=False)
    table.add_column("Key", style="bold")
    table.add_column("Value", style="cyan")
    for key, value in items.items():
        table.add_row(key, fmt(value))
    console.print(table)
