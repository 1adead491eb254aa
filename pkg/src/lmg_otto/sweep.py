"""Particle-number sweeps and the micro-economics of the work output.

A sweep runs the exact cycle and the first-order work split for every N
in a range, per scaling mode.  Analyses on top of the assembled table
locate the maximum-return point (argmax of W over even N), the onset of
diminishing returns (first sustained negative curvature of W over even
N), efficiency extrema, and parity-alternation scores.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cycle import EngineParams, run_otto_cycle
from .errors import InsufficientData, NoEngineOperation
from .perturbation import delta_populations, perturbative_work
from .phasespace import transition_table_exact
from .spins import ScalingMode, make_sector

__all__ = [
    "SweepRow",
    "SweepTable",
    "ReturnsAnalysis",
    "DeltaPopulationReport",
    "sweep_cycle",
    "returns_analysis",
    "efficiency_extrema",
    "delta_population_report",
    "parity_oscillation_score",
]


@dataclass(frozen=True)
class SweepRow:
    n: int
    mode: ScalingMode
    w: float
    q_in: float
    q_out: float
    eta_signed: float | None
    u_a: float
    u_b: float
    u_c: float
    u_d: float
    w_pert_x: float
    w_pert_xy: float
    parity: int


@dataclass(frozen=True)
class SweepTable:
    """One row per (N, mode); N ascending within each mode block."""

    rows: tuple

    def for_mode(self, mode: ScalingMode) -> tuple:
        return tuple(r for r in self.rows if r.mode is mode)

    def even_rows(self, mode: ScalingMode) -> tuple:
        return tuple(r for r in self.for_mode(mode) if r.n % 2 == 0)

    def row(self, n: int, mode: ScalingMode) -> SweepRow:
        for r in self.rows:
            if r.n == n and r.mode is mode:
                return r
        raise KeyError(f"no row for N={n}, mode={mode}")


def sweep_cycle(
    params: EngineParams,
    n_from: int,
    n_to: int,
    modes: tuple[ScalingMode, ...] | None = None,
) -> SweepTable:
    """Exact cycle plus perturbative work for every N in [n_from, n_to]."""
    if not (1 <= n_from <= n_to <= 500):
        raise InsufficientData(
            f"need 1 <= n_from <= n_to <= 500, got [{n_from}, {n_to}]"
        )
    if modes is None:
        modes = (params.mode,)
    rows = []
    for mode in modes:
        run = params.with_mode(mode)
        for n in range(n_from, n_to + 1):
            sector = make_sector(n)
            cyc = run_otto_cycle(sector, run)
            pert = perturbative_work(sector, run, transition_table_exact(sector))
            rows.append(SweepRow(
                n=n, mode=mode, w=cyc.w, q_in=cyc.q_in, q_out=cyc.q_out,
                eta_signed=cyc.eta_signed,
                u_a=cyc.u_a, u_b=cyc.u_b, u_c=cyc.u_c, u_d=cyc.u_d,
                w_pert_x=pert.w_x, w_pert_xy=pert.w_xy,
                parity=n % 2,
            ))
    return SweepTable(rows=tuple(rows))


@dataclass(frozen=True)
class ReturnsAnalysis:
    """Maximum and diminishing-return points of the even-N work curve.

    marginal holds (N, W(N) - W(N-2)) and productivity (N, W/N), both
    over the even rows.  n_dim is the smallest even N whose centred
    second difference is negative and stays negative at the next even
    step; requiring two consecutive negatives suppresses single-point
    noise from parity coupling.
    """

    mode: ScalingMode
    n_max: int
    n_dim: int | None
    marginal: tuple
    productivity: tuple


def returns_analysis(table: SweepTable, mode: ScalingMode) -> ReturnsAnalysis:
    even = table.even_rows(mode)
    if len(even) < 6:
        raise InsufficientData(
            f"need at least 6 even-N rows for mode {mode}, got {len(even)}"
        )
    ns = np.array([r.n for r in even])
    ws = np.array([r.w for r in even])
    if np.any(np.diff(ns) != 2):
        raise InsufficientData("even-N rows must be consecutive (step 2)")
    n_max = int(ns[int(np.argmax(ws))])
    second = ws[2:] - 2 * ws[1:-1] + ws[:-2]   # centred at ns[1:-1]
    n_dim = None
    for i in range(len(second) - 1):
        if second[i] < 0 and second[i + 1] < 0:
            n_dim = int(ns[1 + i])
            break
    marginal = tuple((int(ns[i]), float(ws[i] - ws[i - 1]))
                     for i in range(1, len(ns)))
    productivity = tuple((int(n), float(w / n)) for n, w in zip(ns, ws))
    return ReturnsAnalysis(mode=mode, n_max=n_max, n_dim=n_dim,
                           marginal=marginal, productivity=productivity)


def efficiency_extrema(table: SweepTable, mode: ScalingMode):
    """(N, eta_signed) of the best-efficiency engine row (W > 0)."""
    best = None
    for r in table.for_mode(mode):
        if r.w > 0 and r.eta_signed is not None:
            if best is None or r.eta_signed > best[1]:
                best = (r.n, r.eta_signed)
    if best is None:
        raise NoEngineOperation(
            f"no row with positive work for mode {mode}"
        )
    return best


@dataclass(frozen=True)
class DeltaPopulationReport:
    """Per-N endpoint population changes with dominant-level flags.

    For integer S the work is carried by n in {0, +-1}; for half-integer
    S by n in {+-1/2, +-3/2}.  dominant_fraction is the share of the
    total |dP| mass on those levels.
    """

    params: EngineParams
    entries: tuple   # (n, twice_n array, delta array, dominant_fraction)


def delta_population_report(params: EngineParams, n_list) -> DeltaPopulationReport:
    entries = []
    for n in n_list:
        sector = make_sector(int(n))
        dp = delta_populations(sector, params)
        dominant_twice = (0, 2, -2) if sector.twice_s % 2 == 0 else (1, -1, 3, -3)
        mask = np.isin(sector.twice_n, dominant_twice)
        total = float(np.sum(np.abs(dp.delta)))
        frac = float(np.sum(np.abs(dp.delta[mask])) / total) if total > 0 else 1.0
        entries.append((int(n), sector.twice_n, dp.delta, frac))
    return DeltaPopulationReport(params=params, entries=tuple(entries))


def parity_oscillation_score(series) -> float:
    """Mean alternation sign of a series over consecutive N.

    For every interior even N the sign of value(N) minus the average of
    its odd neighbours is collected; the mean is +-1 for a parity-locked
    series and near 0 for a smooth one.
    """
    pts = sorted((int(n), float(v)) for n, v in series)
    if len(pts) < 6:
        raise InsufficientData(f"need at least 6 points, got {len(pts)}")
    ns = [n for n, _ in pts]
    if ns != list(range(ns[0], ns[0] + len(ns))):
        raise InsufficientData("series must cover consecutive N")
    vals = dict(pts)
    signs = [
        np.sign(vals[n] - 0.5 * (vals[n - 1] + vals[n + 1]))
        for n in ns[1:-1]
        if n % 2 == 0
    ]
    if not signs:
        raise InsufficientData("no interior even N in the series")
    return float(np.mean(signs))
