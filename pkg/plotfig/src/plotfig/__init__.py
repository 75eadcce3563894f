"""Figure rendering for the floquet-ratchet CSV artifacts."""

from .errors import EmptyInput, MissingColumn, PlotfigError
from .recipes import FigureRecipe, SeriesSpec, available_figures, load_recipe
from .render import render

__all__ = [
    "EmptyInput",
    "FigureRecipe",
    "MissingColumn",
    "PlotfigError",
    "SeriesSpec",
    "available_figures",
    "load_recipe",
    "render",
]
