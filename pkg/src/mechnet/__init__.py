"""Simulation of entanglement distribution between megahertz and gigahertz mechanical nodes.

Two schemes are covered: a cascaded steady-state scheme solved through the
Lyapunov equation (:mod:`mechnet.cascaded`) and a pulsed scheme with closed
form covariance matrices (:mod:`mechnet.pulse`), checked against a truncated
Fock-space oracle (:mod:`mechnet.fock`).
"""

from .cascaded import (
    CascadedParams,
    NonConvergence,
    SingularSystem,
    SteadyState,
    Unstable,
    build_diffusion,
    build_drift,
    check_stability,
    entanglement_report,
    solve_lyapunov,
    solve_steady_state,
)
from .gaussian import (
    CovarianceMatrix,
    check_physicality,
    excitation_number,
    extract_bipartite,
    log_negativity,
)
from .pulse import (
    PulseLabParams,
    PulseParams,
    e12,
    loss_from_distance,
    squeeze_parameter,
    subsystem_cm,
    transfer_efficiency,
)
from .units import drive_amplitude, pulse_coupling, thermal_occupation

__all__ = [
    "CascadedParams",
    "NonConvergence",
    "SingularSystem",
    "SteadyState",
    "Unstable",
    "build_diffusion",
    "build_drift",
    "check_stability",
    "entanglement_report",
    "solve_lyapunov",
    "solve_steady_state",
    "CovarianceMatrix",
    "check_physicality",
    "excitation_number",
    "extract_bipartite",
    "log_negativity",
    "PulseLabParams",
    "PulseParams",
    "e12",
    "loss_from_distance",
    "squeeze_parameter",
    "subsystem_cm",
    "transfer_efficiency",
    "drive_amplitude",
    "pulse_coupling",
    "thermal_occupation",
]

__version__ = "0.1.0"
