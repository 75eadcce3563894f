"""Figure recipes: which CSV columns a figure plots, and how.

One JSON file per figure ships inside the package, so a figure is
reproducible from the repository state plus the CSV artifacts alone. A
recipe names its input files (relative to the ``--in`` directory), the
column pair each series draws, and the axis styling. It carries no data
and no computation; rendering applies at most an absolute value, which
keeps every figure a pure view of its inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

__all__ = ["SeriesSpec", "FigureRecipe", "available_figures", "load_recipe"]


@dataclass(frozen=True)
class SeriesSpec:
    """One plotted series: a column pair from one CSV file.

    ``markevery`` thins markers on dense series; 1 marks every point.
    An empty ``marker`` draws a bare line.
    """

    file: str
    x: str
    y: str
    label: str = ""
    line: str = "-"
    marker: str = ""
    markevery: int = 1


@dataclass(frozen=True)
class FigureRecipe:
    """A named figure: input series plus axis styling.

    Recognized style keys: xlabel, ylabel, yscale ("linear"/"log"/"symlog"),
    linthresh (symlog only), abs_y (plot |y|), drawstyle (matplotlib
    drawstyle, e.g. "steps-mid").
    """

    figure_id: str
    inputs: tuple[SeriesSpec, ...]
    style: dict = field(default_factory=dict)


def _recipe_dir():
    return resources.files("plotfig") / "recipes"


def available_figures() -> list[str]:
    """Sorted ids of every recipe shipped with the package."""
    return sorted(
        entry.name[: -len(".json")]
        for entry in _recipe_dir().iterdir()
        if entry.name.endswith(".json")
    )


def load_recipe(figure_id: str) -> FigureRecipe:
    """Parse the shipped recipe for one figure id."""
    candidate = _recipe_dir() / f"{figure_id}.json"
    if not candidate.is_file():
        raise ValueError(
            f"unknown figure {figure_id!r}; available: "
            + ", ".join(available_figures())
        )
    raw = json.loads(candidate.read_text())
    inputs = tuple(SeriesSpec(**spec) for spec in raw["inputs"])
    if not inputs:
        raise ValueError(f"recipe {figure_id!r} declares no inputs")
    return FigureRecipe(
        figure_id=raw["figure_id"], inputs=inputs, style=raw.get("style", {})
    )
