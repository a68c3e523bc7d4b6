"""Bound states of the Klein-Gordon equation with a ring-shaped potential.

Closed-form spectra and wavefunctions come out of a hypergeometric-type
reduction of the separated radial and polar equations; everything the
reduction produces can be cross-checked against an independent
finite-difference eigensolver (see `kgring.oracle`).
"""

from .bound_states import (
    AngularSolution,
    BoundState,
    Coupling,
    PotentialParams,
    QuantumNumbers,
    angular_mode,
    angular_nu_problem,
    angular_wavefunction,
    azimuthal_wavefunction,
    effective_l,
    nonrel_limit_check,
    potential_value,
    radial_energy,
    radial_mode,
    radial_nu_problem,
    radial_wavefunction,
    solve_bound_state,
)
from .errors import (
    ComplexU,
    DegeneracyWarning,
    DegreeError,
    DomainError,
    GridTooCoarse,
    NoBoundState,
    NoConvergence,
    NoPhysicalBranch,
    NoRealK,
    NotAPerfectSquare,
    SolverError,
    UnboundEnergy,
    UnclassifiedSigma,
)
from .kernels import BACKEND
from .nu import (
    Chain,
    Family,
    NUBranch,
    NUProblem,
    PhiFactor,
    Quantization,
    branches,
    candidate_k,
    classify,
    quantize,
    select_physical,
    solution_chain,
)
from .oracle import (
    GridSpec,
    angular_numeric_lambda,
    ode_residual,
    radial_numeric_energy,
)
from .polynomials import Poly, format_poly, perfect_square_root, quad_discriminant
from .special import (
    QuadKind,
    QuadratureRule,
    jacobi_poly,
    laguerre_assoc,
    log_gamma,
    quadrature,
)

__version__ = "0.1.0"

__all__ = [
    "AngularSolution", "BoundState", "Coupling", "PotentialParams",
    "QuantumNumbers", "angular_mode", "angular_nu_problem",
    "angular_wavefunction", "azimuthal_wavefunction", "effective_l",
    "nonrel_limit_check", "potential_value", "radial_energy", "radial_mode",
    "radial_nu_problem", "radial_wavefunction", "solve_bound_state",
    "ComplexU", "DegeneracyWarning", "DegreeError", "DomainError",
    "GridTooCoarse", "NoBoundState", "NoConvergence", "NoPhysicalBranch",
    "NoRealK", "NotAPerfectSquare", "SolverError", "UnboundEnergy",
    "UnclassifiedSigma",
    "BACKEND",
    "Chain", "Family", "NUBranch", "NUProblem", "PhiFactor", "Quantization",
    "branches", "candidate_k", "classify", "quantize", "select_physical",
    "solution_chain",
    "GridSpec", "angular_numeric_lambda", "ode_residual",
    "radial_numeric_energy",
    "Poly", "format_poly", "perfect_square_root", "quad_discriminant",
    "QuadKind", "QuadratureRule", "jacobi_poly", "laguerre_assoc",
    "log_gamma", "quadrature",
    "__version__",
]
