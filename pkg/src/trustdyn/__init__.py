"""Coupled Friedkin-Johnsen / Hawkes trust-event dynamics: simulation,
closed-form equilibrium and spectral stability analysis."""

from .equilibrium import EquilibriumSolution, residual, solve, solve_scalar
from .estimator import TrustEventModel
from .exceptions import TrustDynError
from .model import (
    InitialConditions,
    ModelParams,
    Network,
    SystemState,
    event_intensity_direct,
    step,
    validate,
)
from .simulate import Trajectory, Verdict, replay_check, run
from .stability import (
    BoundaryResult,
    SpectrumReport,
    decoupled_roots,
    find_boundary,
    jacobian,
    jacobian_redundant,
    nonlinear_residual,
    spectrum,
)
from .topology import Kind, RngStream, TopologySpec, generate_W, sample_A, sample_B

__version__ = "0.1.0"
