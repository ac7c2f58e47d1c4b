"""Run reports: JSON serialization, Betti text/CSV, and figure rendering.

A report directory receives the JSON document, one CSV per Betti table
(delimited output) and one PNG per Betti table (matplotlib heat grid).
"""

from __future__ import annotations

import csv
import json
import os

from .resolve import BettiTable


def betti_grid(bt: BettiTable):
    """(column indices, row degrees, nested rank grid) for rendering."""
    if not bt.entries:
        return [], [], []
    imin = min(bt.entries)
    imax = bt.max_index()
    ds = [a - i for i, row in bt.entries.items() for a in row]
    dmin, dmax = min(ds), max(ds)
    cols = list(range(imin, imax + 1))
    rows = list(range(dmin, dmax + 1))
    grid = [[bt.rank(i, i + d) for i in cols] for d in rows]
    return cols, rows, grid


def write_betti_csv(bt: BettiTable, path: str):
    cols, rows, grid = betti_grid(bt)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["degree"] + [str(i) for i in cols])
        for d, line in zip(rows, grid):
            writer.writerow([d] + line)


def write_betti_figure(bt: BettiTable, title: str, path: str):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    cols, rows, grid = betti_grid(bt)
    if not cols:
        cols, rows, grid = [0], [0], [[0]]
    fig, ax = plt.subplots(
        figsize=(1.2 + 0.6 * len(cols), 1.2 + 0.5 * len(rows))
    )
    ax.imshow(grid, cmap="Blues", aspect="auto")
    for y, line in enumerate(grid):
        for x, value in enumerate(line):
            if value:
                ax.text(x, y, str(value), ha="center", va="center", fontsize=9)
    ax.set_xticks(range(len(cols)), [str(i) for i in cols])
    ax.set_yticks(range(len(rows)), [str(d) for d in rows])
    ax.set_xlabel("homological index")
    ax.set_ylabel("internal degree (twist - index)")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def write_report_dir(directory: str, report: dict, tables: dict):
    """Write report.json plus CSV and PNG files for every named Betti table."""
    os.makedirs(directory, exist_ok=True)
    with open(os.path.join(directory, "report.json"), "w") as fh:
        fh.write(report_json(report))
    for name, bt in tables.items():
        if bt is None:
            continue
        write_betti_csv(bt, os.path.join(directory, f"betti_{name}.csv"))
        write_betti_figure(
            bt, f"Betti table ({name})", os.path.join(directory, f"betti_{name}.png")
        )
