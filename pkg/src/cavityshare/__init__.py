"""Entanglement sharing of two atoms coupled to a lossless cavity mode.

The package models the single-excitation sector of two identical two-level
atoms in a single-mode cavity: exact and numerical amplitude dynamics,
bipartite entanglement measures with their sharing inequalities, detection of
sudden freezing/thawing intervals of the total measure, and a CLI wrapping
all of it. Hot numeric paths are JIT-compiled when numba is available; set
CAVITYSHARE_BACKEND=numpy to force the plain NumPy fallback.
"""

from ._kernels import backend_name
from .analysis import (
    FROZEN,
    THAWING,
    FreezeInterval,
    PeriodReport,
    SweepGrid,
    detect_intervals,
    frozen_fraction,
    period_report,
    sharing_triple_evolved,
    sweep,
    tau_to_time,
    ys_atom1_piecewise,
    ys_bell,
    ys_cavity_excited,
    ys_evolved,
)
from .dynamics import (
    AmplitudeState,
    BellState,
    CavityExcited,
    GeneralState,
    InitialCondition,
    SolutionCoefficients,
    amplitude_trajectory,
    evolve_analytic,
    evolve_numeric,
    numeric_trajectory,
    slow_to_full,
    solution_coefficients,
)
from .entanglement import (
    EntanglementTriple,
    MonogamyReport,
    SchmidtPair,
    check_monogamy,
    one_to_other,
    one_to_other_concurrence,
    pairwise_concurrence,
    reduced_eigenvalues,
    schmidt_weight,
    y_from_concurrence,
    y_from_schmidt_weight,
)
from .model import (
    ExcitationBlock,
    ModelParams,
    build_block,
    build_params,
    direct_sum_hamiltonian,
    verify_excitation_conservation,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend_name",
    # model
    "ModelParams",
    "ExcitationBlock",
    "build_params",
    "build_block",
    "direct_sum_hamiltonian",
    "verify_excitation_conservation",
    # dynamics
    "AmplitudeState",
    "InitialCondition",
    "CavityExcited",
    "BellState",
    "GeneralState",
    "SolutionCoefficients",
    "solution_coefficients",
    "amplitude_trajectory",
    "evolve_analytic",
    "evolve_numeric",
    "numeric_trajectory",
    "slow_to_full",
    # entanglement
    "SchmidtPair",
    "EntanglementTriple",
    "MonogamyReport",
    "schmidt_weight",
    "y_from_schmidt_weight",
    "y_from_concurrence",
    "one_to_other",
    "one_to_other_concurrence",
    "reduced_eigenvalues",
    "pairwise_concurrence",
    "check_monogamy",
    # analysis
    "FROZEN",
    "THAWING",
    "FreezeInterval",
    "SweepGrid",
    "PeriodReport",
    "tau_to_time",
    "ys_cavity_excited",
    "ys_bell",
    "ys_atom1_piecewise",
    "ys_evolved",
    "sharing_triple_evolved",
    "detect_intervals",
    "sweep",
    "frozen_fraction",
    "period_report",
]
