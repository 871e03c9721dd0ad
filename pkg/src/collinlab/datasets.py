"""Loading regression data from CSV and building York's binary design."""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import EmptyFile, MissingColumn, ParseError
from .regression import Dataset


@dataclass(frozen=True)
class CsvSchema:
    response: str
    regressors: tuple[str, ...]
    add_intercept: bool = True
    intercept_name: str = "const"

    def __post_init__(self):
        regs = tuple(self.regressors)
        if not regs:
            raise ValueError("at least one regressor is required")
        if self.response in regs:
            raise ValueError(f"response {self.response!r} is also listed as a regressor")
        if self.add_intercept and self.intercept_name in regs:
            raise ValueError(f"regressor name {self.intercept_name!r} is reserved for the intercept")
        object.__setattr__(self, "regressors", regs)


def _parse_cell(text: str, row: int, column: str) -> float:
    try:
        value = float(text.strip())
    except ValueError:
        raise ParseError(f"row {row}, column {column!r}: cannot parse {text!r} as a number", row, column) from None
    if not math.isfinite(value):
        raise ParseError(f"row {row}, column {column!r}: non-finite value {text!r}", row, column)
    return value


def load_csv(path, schema: CsvSchema) -> Dataset:
    """Read a comma-separated file with a header row into a :class:`Dataset`.

    Rows keep their file order. ``row`` in a :class:`ParseError` counts
    data rows from 1 (the header is row 0).
    """
    path = os.fspath(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or not any(h.strip() for h in header):
            raise EmptyFile(f"{path}: no header row")
        header = [h.strip() for h in header]
        wanted = (schema.response, *schema.regressors)
        for name in wanted:
            if name not in header:
                raise MissingColumn(name)
        idx = [header.index(name) for name in wanted]
        rows = []
        for r, record in enumerate(reader, start=1):
            if not record or all(not c.strip() for c in record):
                continue
            if len(record) < len(header):
                raise ParseError(f"row {r}: expected {len(header)} fields, got {len(record)}", r, None)
            rows.append([_parse_cell(record[i], r, header[i]) for i in idx])
    if not rows:
        raise EmptyFile(f"{path}: no data rows")
    data = np.array(rows)
    return Dataset.from_arrays(
        data[:, 0],
        data[:, 1:],
        names=schema.regressors,
        intercept=schema.add_intercept,
        intercept_name=schema.intercept_name,
    )


@dataclass(frozen=True)
class YorkParams:
    m: int = 1

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m}")


YORK_NAMES = ("const", "x1", "x2")


def york_design(params: YorkParams | int) -> np.ndarray:
    """Binary design with blocks of 49m, m, m and 49m rows.

    The blocks are (1, 0, 0), (1, 1, 0), (1, 0, 1) and (1, 1, 1), giving
    ``100 m`` rows and three columns (intercept first).
    """
    m = params.m if isinstance(params, YorkParams) else YorkParams(params).m
    blocks = [((1, 0, 0), 49 * m), ((1, 1, 0), m), ((1, 0, 1), m), ((1, 1, 1), 49 * m)]
    return np.vstack([np.tile(np.array(row, dtype=float), (count, 1)) for row, count in blocks])


def york_dataset(params: YorkParams | int, y=None) -> Dataset:
    """York's design wrapped as a dataset; ``y`` defaults to zeros."""
    X = york_design(params)
    y = np.zeros(X.shape[0]) if y is None else y
    return Dataset(y=y, X=X, names=YORK_NAMES, has_intercept=True)
