"""CSV summaries of trajectories and sweeps.

Floats are written with 17 significant digits so conservation claims can be
checked from the files alone. Lines starting with ``#`` are markers (e.g. a
failed run) and are skipped by :func:`read_csv`.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Optional

TRAJECTORY_COLUMNS = (
    "step",
    "time",
    "total_energy",
    "energy_drift",
    "max_ecl_residual",
    "newton_iters",
)

SWEEP_COLUMNS = (
    "n_points",
    "dt",
    "scheme",
    "n_steps",
    "final_time",
    "status",
    "energy_drift",
    "relative_energy_drift",
    "max_ecl_residual",
    "global_error",
    "error",
)


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(
    rows: Iterable[dict],
    columns: tuple[str, ...],
    path: Path,
    marker: Optional[str] = None,
) -> Path:
    """Write rows in column order; ``marker`` is appended as a '#' line."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(row.get(c)) for c in columns])
        if marker:
            f.write(f"# {marker}\n")
    return path


def read_csv(path: Path) -> tuple[list[str], list[dict[str, str]]]:
    """Return (columns, rows) of a CSV written by :func:`write_csv`."""
    with open(path, newline="", encoding="utf-8") as f:
        lines = [line for line in f if line.strip() and not line.startswith("#")]
    reader = csv.DictReader(lines)
    rows = list(reader)
    return list(reader.fieldnames or []), rows
