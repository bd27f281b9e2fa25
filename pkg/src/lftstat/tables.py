"""Grids of estimates laid out like the published tables, with md/csv/json output."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .estimator import DEFAULT_SAMPLES, decimal_string, estimate_for_taus

TABLE_IDS = ("count-injective", "percentage")
FORMATS = ("md", "csv", "json")


def cell_seed(master: int, l: int, m: int, n: int) -> int:
    """Seed for the sample behind every cell with parameters (l, m, n).

    All delays in a row share one sample, so percentages are monotone in tau.
    """
    ss = np.random.SeedSequence([master, l, m, n])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass
class TableSpec:
    table_id: str
    m: int
    l_values: Sequence[int]
    n_values: Sequence[int]
    tau_values: Sequence[int]
    samples: int = DEFAULT_SAMPLES
    seed: int = 0
    format: str = "md"
    include_trivial: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.table_id not in TABLE_IDS:
            raise ValueError(f"table must be one of {TABLE_IDS}, got {self.table_id!r}")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.format!r}")
        if not self.l_values or not self.n_values or not self.tau_values:
            raise ValueError("parameter ranges must be nonempty")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.table_id == "percentage" and len(self.l_values) != 1:
            raise ValueError("a percentage table fixes a single l")
        if min(self.m, *self.l_values, *self.n_values) < 1 or min(self.tau_values) < 0:
            raise ValueError("l, m, n must be positive and tau nonnegative")


@dataclass
class Cell:
    l: int
    m: int
    n: int
    tau: int
    seed: int
    estimate: Fraction
    percentage: Optional[Fraction]

    def value(self, table_id: str) -> Fraction:
        return self.estimate if table_id == "count-injective" else self.percentage


@dataclass
class Table:
    spec: TableSpec
    cells: list[Cell] = field(default_factory=list)
    wall_seconds: float = 0.0

    def lookup(self, **key) -> Cell:
        for c in self.cells:
            if all(getattr(c, k) == v for k, v in key.items()):
                return c
        raise KeyError(key)


def build_table(spec: TableSpec) -> Table:
    start = time.perf_counter()
    table = Table(spec)
    want_pct = spec.table_id == "percentage"
    for n in spec.n_values:
        for l in spec.l_values:
            seed = cell_seed(spec.seed, l, spec.m, n)
            reports = estimate_for_taus(
                spec.samples, l, spec.m, n, spec.tau_values, seed, spec.workers,
                percentage=want_pct, include_trivial=spec.include_trivial,
            )
            for rep in reports:
                table.cells.append(
                    Cell(l, spec.m, n, rep.tau, seed, rep.estimate, rep.percentage)
                )
    table.wall_seconds = time.perf_counter() - start
    return table


def format_count(x: Fraction) -> str:
    """Three significant digits in scientific notation, e.g. ``3.91e+03``."""
    return f"{float(x):.2e}"


def format_percentage(x: Fraction) -> str:
    return f"{float(x):.2f}"


def _meta(table: Table) -> dict:
    s = table.spec
    return {
        "table": s.table_id,
        "m": s.m,
        "l": list(s.l_values),
        "n": list(s.n_values),
        "tau": list(s.tau_values),
        "samples": s.samples,
        "seed": s.seed,
        "include_trivial": s.include_trivial,
        "runtime_seconds": round(table.wall_seconds, 3),
    }


def _grid(table: Table) -> tuple[str, list, list[list[str]]]:
    """Column label, column keys and formatted rows (first entry is n)."""
    s = table.spec
    if s.table_id == "count-injective":
        tau = s.tau_values[0]
        cols = list(s.l_values)
        rows = [
            [str(n)] + [format_count(table.lookup(l=l, n=n, tau=tau).estimate) for l in cols]
            for n in s.n_values
        ]
        return "l", cols, rows
    l = s.l_values[0]
    cols = list(s.tau_values)
    rows = [
        [str(n)] + [format_percentage(table.lookup(l=l, n=n, tau=t).percentage) for t in cols]
        for n in s.n_values
    ]
    return "tau", cols, rows


def render(table: Table, fmt: Optional[str] = None) -> str:
    fmt = fmt or table.spec.format
    meta = _meta(table)
    if fmt == "json":
        cells = []
        for c in table.cells:
            entry = {
                "l": c.l, "m": c.m, "n": c.n, "tau": c.tau, "seed": c.seed,
                "estimate": f"{c.estimate.numerator}/{c.estimate.denominator}",
                "estimate_decimal": decimal_string(c.estimate),
            }
            if c.percentage is not None:
                entry["percentage"] = f"{c.percentage.numerator}/{c.percentage.denominator}"
                entry["percentage_decimal"] = decimal_string(c.percentage)
            cells.append(entry)
        return json.dumps({"meta": meta, "cells": cells}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        for k, v in meta.items():
            buf.write(f"# {k}: {v}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["l", "m", "n", "tau", "seed", "estimate", "estimate_decimal",
                    "percentage", "percentage_decimal"])
        for c in table.cells:
            pct = c.percentage
            w.writerow([
                c.l, c.m, c.n, c.tau, c.seed,
                f"{c.estimate.numerator}/{c.estimate.denominator}", decimal_string(c.estimate),
                "" if pct is None else f"{pct.numerator}/{pct.denominator}",
                "" if pct is None else decimal_string(pct),
            ])
        return buf.getvalue()
    if fmt == "md":
        label, cols, rows = _grid(table)
        s = table.spec
        if s.table_id == "count-injective":
            title = f"Estimated number of {s.tau_values[0]}-injective classes, m={s.m}"
        else:
            title = f"Estimated percentage of tau-injective classes, l={s.l_values[0]}, m={s.m}"
        lines = [f"<!-- {json.dumps(meta)} -->", f"**{title}**", ""]
        lines.append("| n \\ " + label + " | " + " | ".join(map(str, cols)) + " |")
        lines.append("|" + "---|" * (len(cols) + 1))
        for r in rows:
            lines.append("| " + " | ".join(r) + " |")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
