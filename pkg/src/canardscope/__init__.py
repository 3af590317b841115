"""Fast/slow analysis of a three-variable temperature-carbon oscillator.

The package simulates the scaled system and its dimensional parents,
performs the singular-limit geometry (folded singularities, canards,
singular orbits, admissibility conditions), extracts MMO signatures
from trajectories, and maps the admissible parameter region.
"""

from .errors import (
    AnalysisError,
    CanardPathError,
    NoFoldedNodeError,
    NonFiniteDerivativeError,
    OrbitTrappedError,
    ScalingError,
    SingularLimitError,
    StepUnderflowError,
)
from .integrate import (
    EventRecord,
    EventSpec,
    IntegratorConfig,
    StepStats,
    Trajectory,
    integrate,
    integrate_with_events,
    write_trajectory_csv,
)
from .model import (
    albedo,
    energy_balance_equilibria,
    f,
    h,
    nondimensionalize,
    vf_dimensional_cubic,
    vf_dimensional_tanh,
    vf_full,
)
from .params import DimensionlessParams, PhysicalParams, Scales, State3
from .signature import MmoSignature, classify, extract_oscillations, signature
from .singular import (
    CanardApprox,
    ConditionReport,
    FoldedSingularity,
    SingularOrbit,
    branch_of,
    build_singular_orbit,
    check_conditions,
    delta,
    desingularized_vf,
    discriminant_delta,
    find_folded_singularities,
    funnel_bound_zstar,
    jacobian_folded,
    ordinary_singularities,
    predicted_sao_count,
    project_fold,
    reduced_vf,
    strong_canard,
    z_minus,
    z_plus,
)
from .sweep import RegionRow, SweepSpec, run_sweep

__version__ = "0.1.0"

__all__ = [
    "AnalysisError",
    "CanardApprox",
    "CanardPathError",
    "ConditionReport",
    "DimensionlessParams",
    "EventRecord",
    "EventSpec",
    "FoldedSingularity",
    "IntegratorConfig",
    "MmoSignature",
    "NoFoldedNodeError",
    "NonFiniteDerivativeError",
    "OrbitTrappedError",
    "PhysicalParams",
    "RegionRow",
    "Scales",
    "ScalingError",
    "SingularLimitError",
    "SingularOrbit",
    "State3",
    "StepStats",
    "StepUnderflowError",
    "SweepSpec",
    "Trajectory",
    "albedo",
    "branch_of",
    "build_singular_orbit",
    "check_conditions",
    "classify",
    "delta",
    "desingularized_vf",
    "discriminant_delta",
    "energy_balance_equilibria",
    "extract_oscillations",
    "f",
    "find_folded_singularities",
    "funnel_bound_zstar",
    "h",
    "integrate",
    "integrate_with_events",
    "jacobian_folded",
    "nondimensionalize",
    "ordinary_singularities",
    "predicted_sao_count",
    "project_fold",
    "reduced_vf",
    "run_sweep",
    "signature",
    "strong_canard",
    "vf_dimensional_cubic",
    "vf_dimensional_tanh",
    "vf_full",
    "write_trajectory_csv",
    "z_minus",
    "z_plus",
]
