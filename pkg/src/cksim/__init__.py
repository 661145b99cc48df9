"""Integrable and superintegrable Hamiltonians on the nine 2D Cayley-Klein
spaces, built from a deformed Poisson coalgebra.

The package covers the curved/flat and nondegenerate/degenerate signatures
in one set of formulas: generators and Casimir on Beltrami phase space,
oscillator and attractive-potential families in both Beltrami and polar
coordinates, base/fiber splits on the degenerate spaces via nilpotent jet
evaluation, chart transitions with cotangent lifts, numerical flows with a
compiled core (pure-Python fallback, CKSIM_BACKEND selects), and seeded
self-verification suites.
"""

from .coalgebra import (BeltramiState, Generators, ModelParams,
                        casimir_coalgebra, casimir_two_particle, generators,
                        poisson_bracket)
from .dynamics import (ClosedFormSolution, Integrator, SolutionKind,
                       Trajectory, base_flow, closed_form, conic_residual,
                       hamiltonian_flow)
from .engine import available_backends, get_backend
from .errors import (BarrierSingularity, ChartDomainError, CKError,
                     DegenerateMetric, DomainError, JacobianSingular)
from .geometry import (MetricAt, PolarState, beltrami_state_of,
                       gaussian_curvature, metric_at, polar_state_of)
from .hamiltonians import (BaseFiberSplit, Coords, Family, HamiltonianSpec,
                           Variant, casimir_polar, conserved_quantity,
                           h_beltrami, h_free, h_kc, h_polar, h_sw,
                           hamiltonian, split_base_fiber, split_reference)
from .kernels import Jet, expm1c, gcos, gsin, gtan, shz, sinhc
from .spaces import (ALL_SIGNATURES, CKSignature, SpaceInfo, all_spaces,
                     kappas, space_by_name, space_for_signature)
from .verify import TOLERANCES, run_suites

__version__ = "1.0.0"

__all__ = [
    "ALL_SIGNATURES", "BarrierSingularity", "BaseFiberSplit",
    "BeltramiState", "CKError", "CKSignature", "ChartDomainError",
    "ClosedFormSolution", "Coords", "DegenerateMetric", "DomainError",
    "Family", "Generators", "HamiltonianSpec", "Integrator",
    "JacobianSingular", "Jet", "MetricAt", "ModelParams", "PolarState",
    "SolutionKind", "SpaceInfo", "TOLERANCES", "Trajectory", "Variant",
    "all_spaces", "available_backends", "base_flow", "beltrami_state_of",
    "casimir_coalgebra", "casimir_polar", "casimir_two_particle",
    "closed_form", "conic_residual", "conserved_quantity", "expm1c",
    "gaussian_curvature", "gcos", "generators", "get_backend", "gsin",
    "gtan", "h_beltrami", "h_free", "h_kc", "h_polar", "h_sw",
    "hamiltonian", "hamiltonian_flow", "kappas", "metric_at",
    "poisson_bracket", "polar_state_of", "run_suites", "shz", "sinhc",
    "space_by_name", "space_for_signature", "split_base_fiber",
    "split_reference",
]
