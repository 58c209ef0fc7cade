"""Figure recipes: which CSV columns make which panel.

A recipe is pure layout: input CSV names, the sweep column, per-series
column selection and styling, axis labels/scales and light-cone marker
positions.  The renderer never computes physics; derived curves (like a
dt/L reference line) must arrive as CSV columns from the producing CLI.
"""

from __future__ import annotations

from dataclasses import dataclass, field


PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


@dataclass(frozen=True)
class Series:
    csv: str                 # file name inside the data directory
    y: str                   # column: "abs" | "im" | "re"
    label: str
    color: str
    linestyle: str = "-"


@dataclass(frozen=True)
class FigureRecipe:
    name: str
    x: str                   # sweep column name
    series: tuple
    xlabel: str
    ylabel: str
    lightcone: float | None = None   # vertical marker at dt = |dx|
    logx: bool = False
    logy: bool = False
    title: str = ""


def _estimator_vs_dt(name: str, zero_mode: bool) -> FigureRecipe:
    label = "zero mode included" if zero_mode else "zero mode excluded"
    return FigureRecipe(
        name=name, x="dt",
        series=(Series(f"{name}__estimator.csv", "abs", label, PALETTE[0]),),
        xlabel="time gap dt", ylabel="signalling estimator E",
        lightcone=5.0, title=f"{name}: delta switching, pointlike detectors",
    )


def _fig2a() -> FigureRecipe:
    series = tuple(
        Series(f"fig2a_L{L}__estimator.csv", "abs", f"L = {L}", PALETTE[i])
        for i, L in enumerate((10, 20, 40, 80)))
    return FigureRecipe(
        name="fig2a", x="dt", series=series,
        xlabel="time gap dt", ylabel="oscillator-only estimator E",
        lightcone=5.0, title="fig2a: oscillator part vs dt for several box sizes")


def _fig2b() -> FigureRecipe:
    return FigureRecipe(
        name="fig2b", x="L",
        series=(
            Series("fig2b_spacelike__estimator.csv", "abs", "spacelike (dx=5, dt=2)", PALETTE[0]),
            Series("fig2b_timelike__estimator.csv", "abs", "timelike (dx=2, dt=4)", PALETTE[1]),
            Series("fig2b_spacelike__reference.csv", "abs", "dt/L reference", PALETTE[2], "--"),
        ),
        xlabel="box size L", ylabel="oscillator-only estimator E",
        logx=True, logy=True, title="fig2b: estimator vs box size")


def _fig3() -> FigureRecipe:
    ratios = (("fig3_r1__estimator.csv", "delta/gap = 1"),
              ("fig3_r0p5__estimator.csv", "delta/gap = 1/2"),
              ("fig3_r0p25__estimator.csv", "delta/gap = 1/4"),
              ("fig3_r0p125__estimator.csv", "delta/gap = 1/8"))
    series = tuple(Series(csv, "abs", lab, PALETTE[i]) for i, (csv, lab) in enumerate(ratios))
    series += (Series("fig3_delta__estimator.csv", "abs", "delta/pointlike", "#000000", "--"),)
    return FigureRecipe(
        name="fig3", x="D", series=series,
        xlabel="surface-to-surface distance D", ylabel="estimator E",
        title="fig3: top-hat smearing/switching vs the delta limit")


def _commutator_vs_dt(name: str, series, lightcone, title: str) -> FigureRecipe:
    return FigureRecipe(
        name=name, x="dt", series=tuple(series),
        xlabel="time gap dt", ylabel="Im commutator",
        lightcone=lightcone, title=title)


def _fig4a() -> FigureRecipe:
    return _commutator_vs_dt(
        "fig4a", [Series("fig4a__commutator.csv", "im", "large-box surrogate", PALETTE[0])],
        5.0, "fig4a: free-space reference commutator (surrogate)")


def _fig4b() -> FigureRecipe:
    return _commutator_vs_dt(
        "fig4b",
        [Series("fig4b_c50__commutator.csv", "im", "50^2 modes", PALETTE[0]),
         Series("fig4b_c100__commutator.csv", "im", "100^2 modes", PALETTE[1])],
        5.0, "fig4b: annulus commutator (no zero mode)")


def _fig5(name: str, lightcone: float) -> FigureRecipe:
    return _commutator_vs_dt(
        name,
        [Series(f"{name}_zm__commutator.csv", "im", "zero mode included", PALETTE[0]),
         Series(f"{name}_osc__commutator.csv", "im", "zero mode excluded", PALETTE[1])],
        lightcone, f"{name}: 2-torus commutator")


def _fig6() -> FigureRecipe:
    return _commutator_vs_dt(
        "fig6", [Series("fig6__commutator.csv", "im", "PV mode integral", PALETTE[0])],
        5.0, "fig6: 2+1 Einstein cylinder")


def _fig7() -> FigureRecipe:
    return _commutator_vs_dt(
        "fig7",
        [Series("fig7_zm__commutator.csv", "im", "zero mode included", PALETTE[0]),
         Series("fig7_osc__commutator.csv", "im", "zero mode excluded", PALETTE[1])],
        0.5, "fig7: 3-torus commutator (strong Huygens)")


RECIPES = {
    "fig1a": _estimator_vs_dt("fig1a", False),
    "fig1b": _estimator_vs_dt("fig1b", True),
    "fig2a": _fig2a(),
    "fig2b": _fig2b(),
    "fig3": _fig3(),
    "fig4a": _fig4a(),
    "fig4b": _fig4b(),
    "fig5a": _fig5("fig5a", 5.0),
    "fig5b": _fig5("fig5b", 5.385164807134504),  # sqrt(5^2 + 2^2)
    "fig6": _fig6(),
    "fig7": _fig7(),
}


def recipe_from_dict(data: dict) -> FigureRecipe:
    """Build a recipe from a JSON object (custom figures)."""
    series = tuple(
        Series(csv=s["csv"], y=s.get("y", "abs"), label=s.get("label", s["csv"]),
               color=s.get("color", PALETTE[i % len(PALETTE)]),
               linestyle=s.get("linestyle", "-"))
        for i, s in enumerate(data["series"]))
    return FigureRecipe(
        name=data.get("name", "custom"), x=data["x"], series=series,
        xlabel=data.get("xlabel", data["x"]), ylabel=data.get("ylabel", "value"),
        lightcone=data.get("lightcone"), logx=bool(data.get("logx", False)),
        logy=bool(data.get("logy", False)), title=data.get("title", ""))
