"""Tabular time-series storage: loading, validation and windowing.

A table holds named numeric variables sampled at ordered time points.
Time labels are opaque strings kept in file order; missing cells are
stored as NaN and handled pairwise at analysis time.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import (
    DuplicateVariable,
    EmptyTable,
    NonNumericCell,
    OutOfRange,
    RaggedRow,
    SpecExceedsTable,
    UnknownVariable,
    WindowTooSmall,
)

MIN_WINDOW = 3


class Role(Enum):
    INPUT = "input"
    OUTPUT = "output"
    INTERNAL = "internal"


@dataclass(frozen=True)
class TimeSeriesTable:
    """Immutable table of named variables over ordered time points.

    ``values`` is a ``len(time_labels) x len(variables)`` float matrix
    with NaN marking missing cells. ``roles`` defaults every variable
    to ``Role.INTERNAL``; roles are user-declared, never inferred.
    """

    variables: tuple[str, ...]
    time_labels: tuple[str, ...]
    values: np.ndarray
    roles: dict[str, Role] = field(default_factory=dict)

    def __post_init__(self):
        names = self.variables
        if len(names) == 0:
            raise EmptyTable("table has no variables")
        if any(not n for n in names):
            raise DuplicateVariable("variable names must be non-empty")
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if list(names).count(n) > 1})
            raise DuplicateVariable(f"duplicate variable name(s): {', '.join(dupes)}")
        if len(self.time_labels) == 0:
            raise EmptyTable("table has no rows")
        if self.values.ndim != 2 or self.values.shape != (len(self.time_labels), len(names)):
            raise RaggedRow(
                f"values shape {self.values.shape} does not match "
                f"{len(self.time_labels)} rows x {len(names)} variables"
            )
        for name in self.roles:
            if name not in names:
                raise UnknownVariable(f"role declared for unknown variable '{name}'")
        self.values.setflags(write=False)

    def __len__(self) -> int:
        return len(self.time_labels)

    @property
    def n_variables(self) -> int:
        return len(self.variables)

    def column(self, name: str) -> np.ndarray:
        if name not in self.variables:
            raise UnknownVariable(f"unknown variable '{name}'")
        return self.values[:, self.variables.index(name)]

    def role(self, name: str) -> Role:
        if name not in self.variables:
            raise UnknownVariable(f"unknown variable '{name}'")
        return self.roles.get(name, Role.INTERNAL)

    def with_roles(self, roles: dict[str, Role]) -> "TimeSeriesTable":
        return TimeSeriesTable(self.variables, self.time_labels,
                               np.array(self.values), dict(roles))


@dataclass(frozen=True)
class WindowSpec:
    """Sliding-window layout: ``size`` time points advancing by ``stride``."""

    size: int
    stride: int = 1

    def __post_init__(self):
        if self.size < MIN_WINDOW:
            raise WindowTooSmall(f"window size {self.size} < {MIN_WINDOW}")
        if self.stride < 1:
            raise WindowTooSmall(f"stride {self.stride} < 1")


def _parse_cell(text: str, row: int, col: int) -> float:
    """Parse one cell; empty means missing. Period is the only decimal mark."""
    stripped = text.strip()
    if stripped == "":
        return math.nan
    try:
        value = float(stripped)
    except ValueError:
        value = math.nan
        ok = False
    else:
        ok = math.isfinite(value)
    if not ok:
        raise NonNumericCell(f"non-numeric cell '{text}' at row {row}, column {col}")
    return value


def load_table(source) -> TimeSeriesTable:
    """Read a table from CSV text or bytes.

    The header row names the time column first, then one column per
    variable. Each data row carries a time label followed by numeric
    cells; an empty cell records a missing value.
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw

    rows = [row for row in csv.reader(io.StringIO(text))]
    rows = [row for row in rows if row]  # drop blank lines
    if not rows:
        raise EmptyTable("no header row")
    header = rows[0]
    variables = [name.strip() for name in header[1:]]
    if not variables:
        raise EmptyTable("header names no variables")
    if len(rows) == 1:
        raise EmptyTable("no data rows")

    labels = []
    data = []
    for r, row in enumerate(rows[1:], start=1):
        if len(row) != len(header):
            raise RaggedRow(
                f"row {r} has {len(row)} cells, header has {len(header)}"
            )
        labels.append(row[0].strip())
        data.append([_parse_cell(cell, r, c) for c, cell in enumerate(row[1:], start=1)])

    return TimeSeriesTable(tuple(variables), tuple(labels), np.array(data, dtype=float))


def to_csv(table: TimeSeriesTable, time_column: str = "time") -> str:
    """Serialize back to the CSV layout accepted by :func:`load_table`."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([time_column, *table.variables])
    for label, row in zip(table.time_labels, table.values):
        writer.writerow([label] + ["" if math.isnan(v) else repr(float(v)) for v in row])
    return out.getvalue()


def load_roles(text: str) -> dict[str, Role]:
    """Parse ``role.<variable>=input|output|internal`` lines.

    Unknown keys are ignored so the same file can carry other run
    settings (see :mod:`kmapper.cli`).
    """
    roles: dict[str, Role] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#") or "=" not in line:
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        if not key.startswith("role."):
            continue
        variable = key[len("role."):]
        try:
            roles[variable] = Role(value.strip().lower())
        except ValueError:
            raise ValueError(
                f"line {lineno}: role must be input|output|internal, got '{value.strip()}'"
            ) from None
    return roles


def select_window(table: TimeSeriesTable, start: int, size: int) -> TimeSeriesTable:
    """Contiguous row slice ``[start, start+size)`` with the same variables."""
    if size < MIN_WINDOW:
        raise WindowTooSmall(f"window size {size} < {MIN_WINDOW}")
    if start < 0 or start + size > len(table):
        raise OutOfRange(
            f"window [{start}, {start + size}) outside table of length {len(table)}"
        )
    return TimeSeriesTable(
        table.variables,
        table.time_labels[start:start + size],
        np.array(table.values[start:start + size]),
        dict(table.roles),
    )


def sliding_windows(table: TimeSeriesTable, spec: WindowSpec) -> list[TimeSeriesTable]:
    """All windows at starts 0, stride, 2*stride, ... while they fit."""
    if spec.size > len(table):
        raise SpecExceedsTable(
            f"window size {spec.size} exceeds table length {len(table)}"
        )
    return [
        select_window(table, start, spec.size)
        for start in range(0, len(table) - spec.size + 1, spec.stride)
    ]


def window_starts(table_length: int, spec: WindowSpec) -> list[int]:
    return list(range(0, table_length - spec.size + 1, spec.stride))
