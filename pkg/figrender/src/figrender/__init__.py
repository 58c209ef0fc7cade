"""Figure rendering for causal-modes CSV output."""

from .recipes import RECIPES, FigureRecipe, Series, recipe_from_dict
from .render import MissingColumnError, MissingFileError, RenderError, render

__version__ = "0.1.0"

__all__ = ["RECIPES", "FigureRecipe", "Series", "recipe_from_dict", "render",
           "RenderError", "MissingColumnError", "MissingFileError"]
