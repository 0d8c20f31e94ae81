"""Sector areas of a disk cut by concurrent chords through an interior pole.

Closed-form sector areas, alternating-sum balance residuals with their
equal-area conditions, independent quadrature and Monte Carlo oracles, a
root solver for balanced configurations, and deterministic JSON/CSV/SVG
reporting.
"""

from .conditions import (
    CASE_EIGHT,
    CASE_FOUR,
    CASE_GENERAL,
    CASE_SIX,
    VARIANT_AS_PRINTED,
    VARIANT_CORRECTED,
    EightSectorCheck,
    FourSectorCheck,
    ResidualReport,
    SixSectorCheck,
    case_residual,
    residual_eight,
    residual_four,
    residual_general,
    residual_six,
    special_case_eight,
    special_case_four,
    special_case_six,
)
from .geometry import (
    AreaReport,
    ChordFan,
    CircleConfig,
    DomainError,
    SectorPartition,
    area_report,
    build_partition,
    opposite_pair_sum,
    radial_distance,
    sector_area_closed,
    substituted_angle,
)
from .oracle import (
    MonteCarloSpec,
    QuadratureError,
    QuadratureSpec,
    montecarlo_area,
    quadrature_area,
    quadrature_report,
    quadrature_residual,
)
from .render import render_svg
from .serialize import ConfigError, Report, RunConfig, read_config, write_config, write_report
from .solver import (
    ResidualGrid,
    SolveOutcome,
    SolveRequest,
    SolverError,
    SweepAxis,
    feasible_interval,
    find_root,
    scan_sign_change,
    solve_free_angle,
    solve_pole_radius,
    sweep_grid,
)
from .verify import CheckResult, run_checks

__version__ = "0.1.0"

__all__ = [
    "AreaReport",
    "CASE_EIGHT",
    "CASE_FOUR",
    "CASE_GENERAL",
    "CASE_SIX",
    "CheckResult",
    "ChordFan",
    "CircleConfig",
    "ConfigError",
    "DomainError",
    "EightSectorCheck",
    "FourSectorCheck",
    "MonteCarloSpec",
    "QuadratureError",
    "QuadratureSpec",
    "Report",
    "ResidualGrid",
    "ResidualReport",
    "RunConfig",
    "SectorPartition",
    "SixSectorCheck",
    "SolveOutcome",
    "SolveRequest",
    "SolverError",
    "SweepAxis",
    "VARIANT_AS_PRINTED",
    "VARIANT_CORRECTED",
    "area_report",
    "build_partition",
    "case_residual",
    "feasible_interval",
    "find_root",
    "montecarlo_area",
    "opposite_pair_sum",
    "quadrature_area",
    "quadrature_report",
    "quadrature_residual",
    "radial_distance",
    "read_config",
    "render_svg",
    "residual_eight",
    "residual_four",
    "residual_general",
    "residual_six",
    "run_checks",
    "scan_sign_change",
    "sector_area_closed",
    "solve_free_angle",
    "solve_pole_radius",
    "special_case_eight",
    "special_case_four",
    "special_case_six",
    "substituted_angle",
    "sweep_grid",
    "write_config",
    "write_report",
]
