"""Recipe loading and validation."""

import pytest

from plotfig import available_figures, load_recipe

REQUIRED = ["fig1a", "fig3a", "fig4", "fig5a", "fig7c", "fig8c", "fig9b"]


def test_every_required_figure_has_a_recipe():
    have = available_figures()
    for figure_id in REQUIRED:
        assert figure_id in have


def test_recipes_parse_with_inputs_and_labels():
    for figure_id in available_figures():
        recipe = load_recipe(figure_id)
        assert recipe.figure_id == figure_id
        assert recipe.inputs
        assert recipe.style.get("xlabel")
        assert recipe.style.get("ylabel")
        for spec in recipe.inputs:
            assert spec.file.endswith(".csv")
            assert spec.x and spec.y


def test_overlay_recipes_have_two_distinctly_marked_series():
    for figure_id in ("fig4", "fig5a"):
        recipe = load_recipe(figure_id)
        assert len(recipe.inputs) == 2
        a, b = recipe.inputs
        assert (a.marker, a.line) != (b.marker, b.line)
        assert a.label != b.label


def test_unknown_figure_id_is_rejected():
    with pytest.raises(ValueError, match="unknown figure"):
        load_recipe("fig99z")
