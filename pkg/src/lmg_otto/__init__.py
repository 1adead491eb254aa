"""Quantum Otto engine with a collective-spin working medium.

Exact cycle thermodynamics in the maximum-spin multiplet, first-order
perturbation theory splitting the work into spectral and cross-axis
interference parts, semiclassical band geometry on the spin sphere, and
parameter sweeps with reproducible CSV/JSON/SVG outputs.
"""

__version__ = "0.1.0"

from .spins import (
    SpinSector,
    ScalingMode,
    CouplingPair,
    Spectrum,
    make_sector,
    collective_spin_matrix,
    lmg_hamiltonian,
    eigendecompose,
)
from .cycle import (
    EngineParams,
    ThermalPopulations,
    CycleResult,
    gibbs_populations,
    internal_energy,
    run_otto_cycle,
)
from .perturbation import (
    XBasisPopulations,
    DeltaPopulations,
    PerturbativeWork,
    WorkMeasurement,
    xbasis_populations,
    delta_populations,
    perturbative_internal_energy,
    perturbative_work,
    measure_cycle_work,
    isolate_interference_baseline,
    isolate_interference_sign_flip,
    restricted_band_work,
)
from .phasespace import (
    PRODUCTION_GRID,
    TransitionTable,
    BandAreas,
    BandGeometry,
    FockDistribution,
    GeometryReport,
    transition_table_exact,
    band_areas,
    band_geometry,
    transition_table_semiclassical,
    semiclassical_vs_exact_report,
    squeezed_vacuum_fock,
)
from .sweep import (
    SweepRow,
    SweepTable,
    ReturnsAnalysis,
    DeltaPopulationReport,
    sweep_cycle,
    returns_analysis,
    efficiency_extrema,
    delta_population_report,
    parity_oscillation_score,
)
from .emitters import (
    Table,
    ChartSeries,
    emit_csv,
    emit_json,
    emit_svg_chart,
    parse_csv,
    parse_json,
)
from .config import RunConfig, parse_config
from .presets import PRESETS, run_preset
from . import errors

__all__ = [name for name in dir() if not name.startswith("_")]
