"""Render figures from causal-modes output files.

    causalmodes-render <preset|recipe.json> --data DIR --out FILE

The first argument is either a built-in preset id (see --list) or a path
to a JSON recipe.  Only CSV/JSON files produced by the causal-modes CLI
are read; no physics is computed here.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .recipes import RECIPES, recipe_from_dict
from .render import RenderError, render


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="causalmodes-render", description=__doc__)
    p.add_argument("target", nargs="?", help="preset id or recipe.json path")
    p.add_argument("--data", default=".", help="directory holding the input CSVs")
    p.add_argument("--out", default=None, help="output image path (default <target>.png)")
    p.add_argument("--list", action="store_true", help="list preset ids and exit")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.list:
        for name in RECIPES:
            print(name)
        return 0
    if not args.target:
        print("error: a preset id or recipe path is required", file=sys.stderr)
        return 2
    try:
        if args.target in RECIPES:
            recipe = RECIPES[args.target]
        elif os.path.exists(args.target):
            with open(args.target, "r", encoding="utf-8") as fh:
                recipe = recipe_from_dict(json.load(fh))
        else:
            print(f"error: unknown preset or missing recipe file {args.target!r}; "
                  f"known presets: {', '.join(RECIPES)}", file=sys.stderr)
            return 2
        out = args.out or f"{recipe.name}.png"
        path = render(recipe, args.data, out)
    except RenderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (json.JSONDecodeError, KeyError) as exc:
        print(f"error: bad recipe file: {exc}", file=sys.stderr)
        return 2
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
