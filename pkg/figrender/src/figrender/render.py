"""CSV loading, validation and deterministic figure rendering.

Rendering is a pure function of the input files: fixed canvas size,
fixed fonts, no timestamps in the output metadata, so re-rendering with
the same toolchain reproduces the image byte for byte.
"""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .recipes import FigureRecipe


class RenderError(Exception):
    exit_code = 2


class MissingFileError(RenderError):
    pass


class MissingColumnError(RenderError):
    pass


def load_columns(path: str, columns) -> dict:
    """Read the named columns from one CSV; every column must exist."""
    if not os.path.exists(path):
        raise MissingFileError(f"input CSV not found: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        names = reader.fieldnames or []
        missing = [c for c in columns if c not in names]
        if missing:
            raise MissingColumnError(
                f"{path} is missing column(s) {', '.join(missing)}; has {names}")
        rows = list(reader)
    if not rows:
        raise MissingColumnError(f"{path} has a header but no data rows")
    return {c: np.array([float(r[c]) for r in rows]) for c in columns}


def validate_inputs(recipe: FigureRecipe, data_dir: str) -> dict:
    """Check every referenced CSV and column before any drawing starts."""
    loaded = {}
    for s in recipe.series:
        path = os.path.join(data_dir, s.csv)
        loaded[s.csv] = load_columns(path, (recipe.x, s.y))
    return loaded


def render(recipe: FigureRecipe, data_dir: str, out_path: str) -> str:
    loaded = validate_inputs(recipe, data_dir)

    fig, ax = plt.subplots(figsize=(6.4, 4.2), dpi=140)
    for s in recipe.series:
        cols = loaded[s.csv]
        ax.plot(cols[recipe.x], cols[s.y], label=s.label, color=s.color,
                linestyle=s.linestyle, linewidth=1.6)
    if recipe.lightcone is not None:
        ax.axvline(recipe.lightcone, color="#999999", linewidth=1.0,
                   linestyle=":", zorder=0)
        ax.annotate("light cone", xy=(recipe.lightcone, 0.98),
                    xycoords=("data", "axes fraction"),
                    fontsize=8, color="#666666", ha="left", va="top",
                    xytext=(3, 0), textcoords="offset points")
    if recipe.logx:
        ax.set_xscale("log")
    if recipe.logy:
        ax.set_yscale("log")
    ax.set_xlabel(recipe.xlabel)
    ax.set_ylabel(recipe.ylabel)
    if recipe.title:
        ax.set_title(recipe.title, fontsize=10)
    ax.legend(fontsize=8, frameon=False)
    ax.grid(True, alpha=0.25, linewidth=0.5)
    fig.tight_layout()
    os.makedirs(os.path.dirname(os.path.abspath(out_path)), exist_ok=True)
    # fixed metadata: matplotlib would otherwise stamp its version string
    fig.savefig(out_path, format="png", metadata={"Software": "figrender"})
    plt.close(fig)
    return out_path
