"""Reproduction presets: one bundle of CSV/JSON/SVG per standard figure.

Each preset runs end-to-end from the default configuration with no extra
flags.  Sector ranges for the geometry figures are fixed inside this
module so that preset outputs are self-contained and reproducible.
"""

from __future__ import annotations

import math
import os

from . import __version__
from .config import RunConfig
from .emitters import ChartSeries, Table, emit_csv, emit_json, emit_svg_chart
from .errors import IoError, UnknownFlag
from .perturbation import (
    perturbative_internal_energy,
    xbasis_populations,
)
from .phasespace import (
    band_areas,
    semiclassical_vs_exact_report,
    transition_table_exact,
    transition_table_semiclassical,
)
from .spins import ScalingMode, make_sector
from .sweep import delta_population_report, sweep_cycle

__all__ = ["PRESETS", "run_preset"]

# Sector ranges of the geometry presets (integer S and half-integer S').
_GEOM_INT_TWICE_S = tuple(range(4, 25, 2))     # S = 2 .. 12
_GEOM_HALF_TWICE_S = tuple(range(5, 26, 2))    # S' = 2.5 .. 12.5


def _meta(config: RunConfig) -> tuple:
    return config.meta() + (("artifact_version", __version__),)


def _emit(table: Table, series, axes, stem, config: RunConfig, written):
    try:
        os.makedirs(config.out_dir, exist_ok=True)
    except OSError as exc:
        raise IoError(config.out_dir, str(exc)) from exc
    if "csv" in config.formats:
        path = os.path.join(config.out_dir, stem + ".csv")
        emit_csv(table, path)
        written.append(path)
    if "json" in config.formats:
        path = os.path.join(config.out_dir, stem + ".json")
        emit_json(table, path)
        written.append(path)
    if "svg" in config.formats and series:
        path = os.path.join(config.out_dir, stem + ".svg")
        emit_svg_chart(series, axes, path)
        written.append(path)


def _pert_u_b(sector, params):
    hot = params.hot.scaled(params.mode, sector.n_spins)
    pops = xbasis_populations(sector, hot.gamma_x, params.t_hot, "B")
    table = transition_table_exact(sector)
    return perturbative_internal_energy(
        sector, pops, hot.gamma_x, hot.gamma_y, table
    )


def _preset_fig2(config: RunConfig, written, which: str):
    params = config.engine_params(ScalingMode.NON_EXTENSIVE)
    table = sweep_cycle(params, config.n_from, config.n_to)
    ns, exact, pert = [], [], []
    for row in table.rows:
        sector = make_sector(row.n)
        ns.append(row.n)
        if which == "a":
            exact.append(row.u_b)
            pert.append(_pert_u_b(sector, params))
        else:
            exact.append(row.w)
            pert.append(row.w_pert_x + row.w_pert_xy)
    name = "u_b" if which == "a" else "w"
    out = Table(
        columns=("n", f"{name}_exact", f"{name}_perturbative"),
        rows=tuple(zip(ns, exact, pert)),
        meta=_meta(config),
    )
    series = [
        ChartSeries("exact", tuple(ns), tuple(exact), parity_markers=True),
        ChartSeries("perturbative", tuple(ns), tuple(pert), parity_markers=True),
    ]
    ylab = "U_B" if which == "a" else "W"
    _emit(out, series, ("N", ylab, f"fig2{which}: {ylab} vs N, non-extensive"),
          f"fig2{which}", config, written)


def _preset_fig3(config: RunConfig, written, which: str):
    modes = (ScalingMode.NON_EXTENSIVE, ScalingMode.EXTENSIVE)
    params = config.engine_params(ScalingMode.NON_EXTENSIVE)
    table = sweep_cycle(params, config.n_from, config.n_to, modes=modes)
    cols = {"a": "u_b_per_n", "b": "w", "c": "eta_signed"}[which]
    data = {}
    for mode in modes:
        rows = table.for_mode(mode)
        ns = [r.n for r in rows]
        if which == "a":
            vals = [r.u_b / r.n for r in rows]
        elif which == "b":
            vals = [r.w for r in rows]
        else:
            vals = [r.eta_signed for r in rows]
        data[mode] = (ns, vals)
    ns = data[ScalingMode.NON_EXTENSIVE][0]
    out = Table(
        columns=("n", f"{cols}_nonextensive", f"{cols}_extensive"),
        rows=tuple(
            (n, data[ScalingMode.NON_EXTENSIVE][1][i],
             data[ScalingMode.EXTENSIVE][1][i])
            for i, n in enumerate(ns)
        ),
        meta=_meta(config),
    )
    series = []
    for mode in modes:
        xs, ys = data[mode]
        pts = [(x, y) for x, y in zip(xs, ys) if y is not None]
        series.append(ChartSeries(
            mode.value, tuple(p[0] for p in pts), tuple(p[1] for p in pts),
            parity_markers=True,
        ))
    _emit(out, series, ("N", cols, f"fig3{which}: {cols} vs N"),
          f"fig3{which}", config, written)


def _preset_fig_s3(config: RunConfig, written):
    params = config.engine_params(ScalingMode.NON_EXTENSIVE)
    report = delta_population_report(params, (16, 17))
    rows = []
    series = []
    for n, twice_n, delta, frac in report.entries:
        for tn, dp in zip(twice_n, delta):
            rows.append((n, int(tn), float(dp), frac))
        series.append(ChartSeries(
            f"N={n}", tuple(t / 2.0 for t in twice_n), tuple(delta)
        ))
    out = Table(
        columns=("n_spins", "twice_n", "delta_p", "dominant_fraction"),
        rows=tuple(rows),
        meta=_meta(config),
    )
    _emit(out, series, ("n", "delta P_n", "figS3: endpoint population change"),
          "figS3", config, written)


def _preset_fig_s4(config: RunConfig, written):
    for stem, twice_s, twice_n in (("figS4_int", 42, 0), ("figS4_half", 43, 1)):
        sector = make_sector(twice_s)
        report = semiclassical_vs_exact_report(sector, (twice_n,), config.grid)
        out = Table(
            columns=report.COLUMNS,
            rows=report.rows,
            meta=_meta(config) + (
                ("pair_difference_exact", f"{report.pair_difference_exact:.12g}"),
                ("pair_difference_semiclassical",
                 f"{report.pair_difference_semiclassical:.12g}"),
            ),
        )
        ms = [r[1] / 2.0 for r in report.rows]
        series = [
            ChartSeries("exact", tuple(ms), tuple(r[2] for r in report.rows)),
            ChartSeries("semiclassical", tuple(ms),
                        tuple(r[3] for r in report.rows)),
        ]
        _emit(out, series,
              ("m", "P(n,m)", f"{stem}: transition probabilities, 2S={twice_s}"),
              stem, config, written)
    # paired differences P(k,S) - P(k+1,S) across sectors
    rows = []
    for twice_s in sorted(_GEOM_INT_TWICE_S + _GEOM_HALF_TWICE_S):
        sector = make_sector(twice_s)
        report = semiclassical_vs_exact_report(
            sector, (0 if twice_s % 2 == 0 else 1,), config.grid
        )
        rows.append((twice_s, report.pair_difference_exact,
                     report.pair_difference_semiclassical))
    out = Table(
        columns=("twice_s", "pair_difference_exact",
                 "pair_difference_semiclassical"),
        rows=tuple(rows),
        meta=_meta(config),
    )
    xs = tuple(r[0] / 2.0 for r in rows)
    series = [
        ChartSeries("exact", xs, tuple(r[1] for r in rows)),
        ChartSeries("semiclassical", xs, tuple(r[2] for r in rows)),
    ]
    _emit(out, series,
          ("S", "P(k,S) - P(k+1,S)", "figS4 pairs: dominant-band differences"),
          "figS4_pairs", config, written)


def _geometry_scan(config: RunConfig):
    """Phi, cos^2 Phi, P_sc and P_exact at m = S for n in {0, 1/2, 1, 3/2}."""
    rows = []
    for twice_s in sorted(_GEOM_INT_TWICE_S + _GEOM_HALF_TWICE_S):
        sector = make_sector(twice_s)
        areas = band_areas(sector, config.grid)
        semi = transition_table_semiclassical(sector, config.grid)
        exact = transition_table_exact(sector)
        labels = (0, 2) if twice_s % 2 == 0 else (1, 3)
        for twice_n in labels:
            i = sector.index_of(twice_n)
            top = sector.dim - 1
            phi = float(areas.lens[i, top]) / (2 * areas.r_s) - math.pi / 4
            rows.append((
                twice_s, twice_n, phi, math.cos(phi) ** 2,
                float(semi.values[i, top]), float(exact.values[i, top]),
            ))
    return rows


def _scan_series(rows, col):
    series = []
    for twice_n in (0, 1, 2, 3):
        pts = [(r[0] / 2.0, r[col]) for r in rows if r[1] == twice_n]
        if pts:
            series.append(ChartSeries(
                f"n={twice_n / 2:g}",
                tuple(p[0] for p in pts), tuple(p[1] for p in pts),
            ))
    return series


def _preset_fig_s5(config: RunConfig, written):
    rows = _geometry_scan(config)
    out = Table(
        columns=("twice_s", "twice_n", "phi", "cos2_phi",
                 "p_semiclassical", "p_exact"),
        rows=tuple(rows),
        meta=_meta(config),
    )
    _emit(out, _scan_series(rows, 2),
          ("S", "Phi(n, S; S)", "figS5: interference angle vs total spin"),
          "figS5", config, written)


def _preset_fig_s6(config: RunConfig, written):
    rows = _geometry_scan(config)
    out = Table(
        columns=("twice_s", "twice_n", "phi", "cos2_phi",
                 "p_semiclassical", "p_exact"),
        rows=tuple(rows),
        meta=_meta(config),
    )
    _emit(out, _scan_series(rows, 3),
          ("S", "cos^2 Phi", "figS6a: interference cosine vs total spin"),
          "figS6_cos2", config, written)
    _emit(out, _scan_series(rows, 4),
          ("S", "P_sc(n, S; S)", "figS6b: semiclassical P(n, S; S) vs total spin"),
          "figS6_p", config, written)


PRESETS = {
    "fig2a": lambda c, w: _preset_fig2(c, w, "a"),
    "fig2b": lambda c, w: _preset_fig2(c, w, "b"),
    "fig3a": lambda c, w: _preset_fig3(c, w, "a"),
    "fig3b": lambda c, w: _preset_fig3(c, w, "b"),
    "fig3c": lambda c, w: _preset_fig3(c, w, "c"),
    "figS3": _preset_fig_s3,
    "figS4": _preset_fig_s4,
    "figS5": _preset_fig_s5,
    "figS6": _preset_fig_s6,
}


def run_preset(preset: str, config: RunConfig) -> list:
    """Execute one preset; returns the list of written paths."""
    if preset not in PRESETS:
        raise UnknownFlag(
            f"unknown preset {preset!r}; expected one of "
            + ", ".join(sorted(PRESETS))
        )
    written: list = []
    PRESETS[preset](config, written)
    return written
