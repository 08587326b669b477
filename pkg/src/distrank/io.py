"""CSV input for observations and JSON/TOML input for experiment configs."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

__all__ = ["read_observations", "load_two_samples", "load_config_dict"]


def read_observations(path: str | Path, group_column: str = "group"):
    """Read a CSV of observations (header row, one observation per row).

    Numeric columns are coordinates; an optional group column with values
    1/2 splits the rows.  Returns ``(values, groups)`` where ``groups`` is
    None when the file has no group column.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ValueError(f"{path}: empty file")
        header = [h.strip() for h in header]
        rows = [row for row in reader if row]
    group_idx = header.index(group_column) if group_column in header else None
    values = []
    groups = [] if group_idx is not None else None
    for row in rows:
        coords = [float(v) for j, v in enumerate(row) if j != group_idx]
        values.append(coords)
        if group_idx is not None:
            groups.append(int(float(row[group_idx])))
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    return arr, (np.asarray(groups) if groups is not None else None)


def load_two_samples(paths, group_column: str = "group"):
    """Load the two groups from one CSV (group column) or two CSVs (one each)."""
    paths = [Path(p) for p in paths]
    if len(paths) == 1:
        values, groups = read_observations(paths[0], group_column)
        if groups is None:
            raise ValueError(f"{paths[0]}: single-file input needs a '{group_column}' column")
        labels = np.unique(groups)
        if labels.size != 2:
            raise ValueError(f"{paths[0]}: expected exactly two group labels, found {labels}")
        return values[groups == labels[0]], values[groups == labels[1]]
    if len(paths) == 2:
        x, gx = read_observations(paths[0], group_column)
        y, gy = read_observations(paths[1], group_column)
        return x, y
    raise ValueError("expected one or two input files")


def load_config_dict(path: str | Path) -> dict:
    """Parse a JSON or TOML config file into a plain dict (by extension)."""
    path = Path(path)
    if path.suffix.lower() == ".toml":
        return tomllib.loads(path.read_text())
    return json.loads(path.read_text())
