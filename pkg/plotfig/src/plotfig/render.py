"""Render one recipe from CSV inputs to an SVG plus a debug dump.

Inputs are read and validated before any file is written, so a schema
error leaves the output directory untouched. The dump written next to the
figure repeats the plotted columns cell for cell as they appeared in the
input file (the text is copied, not reparsed), which makes "what exactly
did this figure draw" checkable with a diff.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .errors import EmptyInput, MissingColumn
from .recipes import FigureRecipe

__all__ = ["render"]


def _read_columns(path: Path, x: str, y: str) -> tuple[list[str], list[str]]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        rows = [row for row in reader if row]
    if header is None:
        raise EmptyInput(f"{path} is empty")
    for name in (x, y):
        if name not in header:
            raise MissingColumn(
                f"{path} has no column {name!r} (columns: {', '.join(header)})"
            )
    if not rows:
        raise EmptyInput(f"{path} has a header but no data rows")
    ix, iy = header.index(x), header.index(y)
    return [row[ix] for row in rows], [row[iy] for row in rows]


def render(recipe: FigureRecipe, in_dir, out_dir) -> Path:
    """Draw the recipe's series from in_dir and write figure_id.svg.

    Returns the SVG path. Raises MissingColumn or EmptyInput on schema
    mismatch, OSError when an input file is absent, and ValueError when a
    plotted cell does not parse as a float.
    """
    in_dir = Path(in_dir)
    out_dir = Path(out_dir)
    series = [
        (spec, *_read_columns(in_dir / spec.file, spec.x, spec.y))
        for spec in recipe.inputs
    ]

    style = recipe.style
    out_dir.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    try:
        for spec, xs, ys in series:
            x = [float(v) for v in xs]
            y = [float(v) for v in ys]
            if style.get("abs_y"):
                y = [abs(v) for v in y]
            ax.plot(
                x,
                y,
                linestyle=spec.line,
                marker=spec.marker or None,
                markevery=spec.markevery,
                label=spec.label or None,
                drawstyle=style.get("drawstyle", "default"),
            )
        if style.get("yscale") == "symlog":
            ax.set_yscale("symlog", linthresh=style.get("linthresh", 1e-12))
        elif "yscale" in style:
            ax.set_yscale(style["yscale"])
        ax.set_xlabel(style.get("xlabel", ""))
        ax.set_ylabel(style.get("ylabel", ""))
        if any(spec.label for spec, _, _ in series):
            ax.legend()
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        target = out_dir / f"{recipe.figure_id}.svg"
        fig.savefig(target)
    finally:
        plt.close(fig)

    for k, (spec, xs, ys) in enumerate(series):
        dump = out_dir / f"{recipe.figure_id}_data{k}.csv"
        with open(dump, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow([spec.x, spec.y])
            writer.writerows(zip(xs, ys))
    return target
