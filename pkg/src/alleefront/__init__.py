"""Traveling waves and fronts of u_t = u_xx + (u - alpha)(1 - u) chi_{u>0}.

The cutoff turns sub-threshold decay into finite-time extinction, so wave
profiles can vanish identically on half lines and develop free boundaries.
The package computes the critical wave speeds by phase-plane shooting, builds
glued wave and stationary profiles, and cross-validates both against direct
finite-difference simulation of the PDE.
"""

from .phase import (
    EigenData,
    EventSpec,
    ModelParams,
    PhaseState,
    StepUnderflowError,
    Trajectory,
    eigen,
    energy,
    in_omega,
    integrate,
    manifold_seed,
    reaction,
    vector_field,
)
from .shooting import (
    BracketError,
    CriticalSpeeds,
    EndpointResult,
    SpeedEstimate,
    WaveClass,
    bistable_speed,
    classify,
    critical_speeds,
    endpoint,
    kpp_min_speed,
    monotone_min_speed,
    pushed_min_speed,
)
from .profiles import (
    NoWaveError,
    WaveProfile,
    bistable_profile,
    monostable_profile,
    orbit_loop_period,
    orbit_period,
    plateau_profile,
    pushed_profile,
    reflect,
    residual,
    stationary_profile,
)
from .pde import (
    ComparisonReport,
    FrontTrack,
    Grid1D,
    PdeState,
    RunResult,
    bistable_ode_solution,
    comparison_check,
    extinction_time,
    front_track,
    initial_datum,
    run,
    step,
    suggest_domain,
    support_intervals,
)

__version__ = "0.1.0"

__all__ = [
    "ModelParams", "PhaseState", "EigenData", "EventSpec", "Trajectory",
    "StepUnderflowError", "reaction", "vector_field", "energy", "in_omega",
    "eigen", "manifold_seed", "integrate",
    "EndpointResult", "SpeedEstimate", "CriticalSpeeds", "WaveClass",
    "BracketError", "kpp_min_speed", "endpoint", "bistable_speed",
    "pushed_min_speed", "monotone_min_speed", "critical_speeds", "classify",
    "WaveProfile", "NoWaveError", "bistable_profile", "plateau_profile",
    "monostable_profile", "pushed_profile", "stationary_profile",
    "orbit_period", "orbit_loop_period", "reflect", "residual",
    "Grid1D", "PdeState", "FrontTrack", "RunResult", "ComparisonReport",
    "initial_datum", "step", "run", "front_track", "support_intervals",
    "extinction_time", "bistable_ode_solution", "comparison_check",
    "suggest_domain",
    "__version__",
]
