"""Failure types for figure rendering."""


class PlotfigError(Exception):
    """Base class for rendering failures."""


class MissingColumn(PlotfigError):
    """An input CSV lacks a column the recipe plots."""


class EmptyInput(PlotfigError):
    """An input CSV holds no data rows."""
