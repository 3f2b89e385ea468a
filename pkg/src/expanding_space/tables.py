"""Plain CSV output shared by the library writers and the CLI."""

from __future__ import annotations

import csv
from fractions import Fraction

import numpy as np

SIGNIFICANT_DIGITS = 12


def fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if value == 0.0:
        return "0"
    return f"{value:.{SIGNIFICANT_DIGITS}g}"


def write_table(stream, header, columns) -> None:
    """Write equal-length ``columns`` under ``header``."""
    columns = [np.atleast_1d(c) if not isinstance(c, list) else c for c in columns]
    lengths = {len(c) for c in columns}
    if len(lengths) > 1:
        raise ValueError(f"columns have unequal lengths {sorted(lengths)}")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in zip(*columns):
        writer.writerow([fmt(v) for v in row])


def write_rows(stream, header, rows) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])


def read_table(stream) -> dict[str, np.ndarray]:
    """Read a numeric CSV written by :func:`write_table` into named columns."""
    reader = csv.reader(stream)
    header = next(reader)
    rows = [[float(v) for v in row] for row in reader if row]
    data = np.array(rows, dtype=float).reshape(len(rows), len(header))
    return {name: data[:, i] for i, name in enumerate(header)}
