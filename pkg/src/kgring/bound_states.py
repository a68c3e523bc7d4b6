"""Closed-form bound states in a ring-shaped Coulomb potential.

The potential is

    V(r, theta) = alpha/r + (beta + gamma cos theta) / (r^2 sin^2 theta),

and the relativistic spin-zero wave equation is taken with the scalar term
equal to the vector one, so the combination that survives in the separated
equations is c(eps) * V with the energy-dependent coupling
c(eps) = (eps + mass) * coupling_factor. The polar equation then yields an
effective angular momentum

    l_eff = n + B,   B = sqrt((m^2 + beta_eff + u)/2),
    u = sqrt((m^2 + beta_eff)^2 - gamma_eff^2),

generally non-integer, and the radial equation is Coulomb-like with
l -> l_eff, giving

    eps = mass * (n'^2 - q) / (n'^2 + q),   q = a^2/4,   n' = N + l_eff + 1,

where a is the Coulomb strength in c(eps) units. Because beta_eff and
gamma_eff depend on eps, the two closed forms are coupled; `solve_bound_state`
iterates them to a fixed point (one evaluation suffices when beta = gamma = 0).

Sign convention: the level formula depends on alpha only through alpha^2 and
is derived for the attractive orientation, so the solver binds with strength
|alpha| (alpha = 0 cannot bind and raises NoBoundState). `potential_value`
always evaluates the literal expression above.

Everything here reduces through `nu` and the reductions are cross-checked
against that engine in the tests; the separate `oracle` module re-derives the
numbers by finite differences with none of these formulas.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ComplexU, DomainError, NoBoundState, NoConvergence, UnboundEnergy
from .nu import NUProblem
from .polynomials import Poly, Scalar, _exact_sqrt
from .special import jacobi_poly, laguerre_assoc, log_gamma


class Coupling(enum.Enum):
    """How the quoted V splits between the scalar and vector terms.

    HALVED: scalar = vector = V/2, so the separated equations carry
    (eps + mass) * V. FULL: scalar = vector = V, carrying twice that.
    """

    HALVED = "halved"
    FULL = "full"


@dataclass(frozen=True)
class PotentialParams:
    alpha: Scalar
    beta: Scalar
    gamma: Scalar
    mass: Scalar
    coupling: Coupling = Coupling.HALVED

    def __post_init__(self):
        if not float(self.mass) > 0.0:
            raise DomainError(f"mass must be positive, got {self.mass}")

    @property
    def coupling_factor(self) -> int:
        return 1 if self.coupling is Coupling.HALVED else 2

    def energy_coupling(self, eps: Scalar) -> Scalar:
        """c(eps) multiplying the potential in the separated equations."""
        return (eps + self.mass) * self.coupling_factor


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial node count N, polar degree n, azimuthal number m."""

    N: int
    n: int
    m: int

    def __post_init__(self):
        for name in ("N", "n", "m"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise DomainError(f"{name} must be an int, got {v!r}")
        if self.N < 0 or self.n < 0:
            raise DomainError(f"N and n must be non-negative, got {self.N}, {self.n}")


def potential_value(params: PotentialParams, r: float, theta: float) -> float:
    """The literal V(r, theta); defined for r > 0 and theta inside (0, pi)."""
    rf, tf = float(r), float(theta)
    if not rf > 0.0:
        raise DomainError(f"r must be positive, got {r}")
    if not 0.0 < tf < math.pi:
        raise DomainError(f"theta must lie strictly between 0 and pi, got {theta}")
    s = math.sin(tf)
    return float(params.alpha) / rf + (float(params.beta) + float(params.gamma) * math.cos(tf)) / (
        rf * rf * s * s
    )


def _maybe_sqrt(x: Scalar) -> Scalar:
    """sqrt(x) that stays a Fraction when it can."""
    if isinstance(x, (int, Fraction)):
        s = _exact_sqrt(Fraction(x))
        if s is not None:
            return s
    return math.sqrt(float(x))


@dataclass(frozen=True)
class AngularSolution:
    """Polar eigendata at given effective ring strengths."""

    m: int
    n: int
    beta_eff: Scalar
    gamma_eff: Scalar
    u: Scalar
    B: Scalar
    C: Scalar
    l_eff: Scalar

    @property
    def separation_lambda(self) -> Scalar:
        return self.l_eff * (self.l_eff + 1)


def effective_l(m: int, beta_eff: Scalar, gamma_eff: Scalar, n: int) -> AngularSolution:
    """Effective angular momentum l_eff = n + B for the polar equation.

    Requires m^2 + beta_eff >= |gamma_eff| (else the root pair B, C turns
    complex and ComplexU is raised). Results stay exact for exact inputs
    whose square roots are rational.
    """
    if not isinstance(m, int) or isinstance(m, bool):
        raise DomainError(f"m must be an int, got {m!r}")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise DomainError(f"n must be a non-negative int, got {n!r}")
    mm = m * m + beta_eff
    gabs = -gamma_eff if gamma_eff < 0 else gamma_eff
    if mm < gabs:
        raise ComplexU(f"m^2 + beta_eff = {mm} < |gamma_eff| = {gamma_eff}")
    u = _maybe_sqrt(mm * mm - gamma_eff * gamma_eff)
    B = _maybe_sqrt((mm + u) / 2)
    # C via B C = |gamma_eff|/2, which dodges the cancellation in mm - u
    C = gabs / (2 * B) if gabs != 0 else B * 0
    return AngularSolution(
        m=m, n=n, beta_eff=beta_eff, gamma_eff=gamma_eff, u=u, B=B, C=C, l_eff=B + n
    )


def radial_energy(N: int, l_eff: Scalar, alpha: Scalar, mass: Scalar) -> Scalar:
    """Closed-form level of the Coulomb-like radial equation.

    `alpha` is the attraction strength in c(eps) units; only alpha^2 enters.
    Exact inputs give an exact rational energy.
    """
    if not isinstance(N, int) or isinstance(N, bool) or N < 0:
        raise DomainError(f"N must be a non-negative int, got {N!r}")
    if float(l_eff) < 0.0:
        raise DomainError(f"l_eff must be non-negative, got {l_eff}")
    if not float(mass) > 0.0:
        raise DomainError(f"mass must be positive, got {mass}")
    npr = N + l_eff + 1
    q = alpha * alpha / 4
    return mass * (npr * npr - q) / (npr * npr + q)


def radial_nu_problem(params: PotentialParams, eps: Scalar, lam: Scalar) -> NUProblem:
    """Radial equation at energy eps and separation constant lam.

    sigma = r, tau_t = 0, sigma_t = -(mass^2 - eps^2) r^2 - c(eps) alpha r - lam,
    transcribing the potential's alpha with its stored sign (attraction means
    a positive linear coefficient here).
    """
    if abs(float(eps)) >= float(params.mass):
        raise UnboundEnergy(f"|eps| = {abs(float(eps))} >= mass = {params.mass}")
    c = params.energy_coupling(eps)
    eta2 = params.mass * params.mass - eps * eps
    return NUProblem(
        sigma=Poly([0, 1]),
        tau_tilde=Poly([0]),
        sigma_tilde=Poly([-lam, -(c * params.alpha), -eta2]),
    )


def angular_nu_problem(params: PotentialParams, eps: Scalar, m: int, lam: Scalar) -> NUProblem:
    """Polar equation in x = cos(theta) at energy eps.

    sigma = 1 - x^2, tau_t = -2x,
    sigma_t = -lam x^2 - gamma_eff x + (lam - m^2 - beta_eff).
    """
    c = params.energy_coupling(eps)
    beta_eff = c * params.beta
    gamma_eff = c * params.gamma
    return NUProblem(
        sigma=Poly([1, 0, -1]),
        tau_tilde=Poly([0, -2]),
        sigma_tilde=Poly([lam - m * m - beta_eff, -gamma_eff, -lam]),
    )


@dataclass(frozen=True)
class BoundState:
    """A converged level plus everything needed to evaluate its wavefunction."""

    params: PotentialParams
    numbers: QuantumNumbers
    energy: float
    angular: AngularSolution
    iterations: int
    converged: bool
    residual: float

    @property
    def l_eff(self) -> float:
        return float(self.angular.l_eff)

    @property
    def n_prime(self) -> float:
        return self.numbers.N + self.l_eff + 1.0

    @property
    def kappa(self) -> float:
        m = float(self.params.mass)
        return math.sqrt(m * m - self.energy * self.energy)

    @property
    def binding(self) -> float:
        return self.energy - float(self.params.mass)

    @property
    def separation_lambda(self) -> float:
        return float(self.angular.separation_lambda)

    @property
    def norm_radial(self) -> float:
        return math.exp(_radial_log_norm(self.numbers.N, self.l_eff, self.kappa))

    @property
    def norm_angular(self) -> float:
        return math.exp(_angular_log_norm(self.numbers.n, float(self.angular.B), float(self.angular.C)))


def solve_bound_state(
    params: PotentialParams,
    numbers: QuantumNumbers,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> BoundState:
    """Self-consistent energy for the (N, n, m) level.

    With beta = gamma = 0 the polar data is energy-free and the closed form
    is final after a single evaluation. Otherwise a damped fixed-point
    iteration on eps -> radial_energy(N, l_eff(eps), ...) runs first, and a
    bisection on eps - g(eps) over the feasible energy window finishes the
    job if damping alone stalls. `residual` is |eps - g(eps)| at the result;
    convergence means residual <= tol * mass.
    """
    if not (isinstance(max_iter, int) and max_iter >= 2):
        raise DomainError(f"max_iter must be an int >= 2, got {max_iter!r}")
    if not float(tol) > 0.0:
        raise DomainError(f"tol must be positive, got {tol}")
    mass = float(params.mass)
    factor = params.coupling_factor
    strength = factor * abs(float(params.alpha))
    if strength == 0.0:
        raise NoBoundState("alpha = 0: nothing binds radially")
    N, n, m = numbers.N, numbers.n, numbers.m
    beta, gamma = float(params.beta), float(params.gamma)

    if beta == 0.0 and gamma == 0.0:
        ang = effective_l(m, 0, 0, n)
        eps = float(radial_energy(N, ang.l_eff, strength, mass))
        return BoundState(params, numbers, eps, ang, iterations=1, converged=True, residual=0.0)

    def step(eps: float):
        c = factor * (eps + mass)
        ang = effective_l(m, c * beta, c * gamma, n)
        return float(radial_energy(N, ang.l_eff, strength, mass)), ang

    # feasibility: c(eps) * (|gamma| - beta) <= m^2 bounds eps from above
    lo = -mass * (1.0 - 1e-9)
    hi = mass
    need = abs(gamma) - beta
    if need > 0.0:
        hi = min(hi, (m * m) / (factor * need) - mass)
        if hi <= lo:
            raise ComplexU(
                "no energy in (-mass, mass) keeps m^2 + beta_eff >= |gamma_eff|"
            )

    guess = N + abs(m) + n + 1.0
    eps = mass * (1.0 - strength * strength / (2.0 * guess * guess))
    eps = min(max(eps, lo), hi)

    evals = 0
    ang = None
    for _ in range(max_iter // 2):
        g, ang = step(eps)
        evals += 1
        residual = abs(eps - g)
        if residual <= tol * mass:
            return BoundState(params, numbers, eps, ang, evals, True, residual)
        eps = min(max(eps + 0.5 * (g - eps), lo), hi)

    # h(eps) = eps - g(eps) is negative at the bottom of the window and
    # positive at a solvable top; bisect the sign change
    a, b = lo, hi
    ha = a - step(a)[0]
    hb = b - step(b)[0]
    evals += 2
    if ha >= 0.0:
        raise NoBoundState(f"no self-consistent level in the window for {numbers}")
    if hb < 0.0:
        raise ComplexU("self-consistent energy runs out of the real-ring-strength window")
    while evals < max_iter:
        mid = 0.5 * (a + b)
        g, ang = step(mid)
        evals += 1
        residual = abs(mid - g)
        if residual <= tol * mass:
            return BoundState(params, numbers, mid, ang, evals, True, residual)
        if mid - g < 0.0:
            a = mid
        else:
            b = mid
        if b - a <= 1e-17 * mass:
            break
    raise NoConvergence(
        f"residual {abs(0.5 * (a + b) - step(0.5 * (a + b))[0]):.3e} after {evals} evaluations"
    )


def _radial_log_norm(N: int, l_eff: float, kappa: float) -> float:
    npr = N + l_eff + 1.0
    return (l_eff + 1.0) * math.log(2.0 * kappa) + 0.5 * (
        math.log(kappa) + log_gamma(N + 1) - math.log(npr) - log_gamma(N + 2.0 * l_eff + 2.0)
    )


def _angular_log_norm(n: int, B: float, C: float) -> float:
    return 0.5 * (
        math.log(2.0 * n + 2.0 * B + 1.0)
        + log_gamma(n + 1)
        + log_gamma(n + 2.0 * B + 1.0)
        - (2.0 * B + 1.0) * math.log(2.0)
        - log_gamma(n + B + C + 1.0)
        - log_gamma(n + B - C + 1.0)
    )


def radial_mode(N: int, l_eff: float, kappa: float, r):
    """Unit-dr-norm radial factor u(r) = C r^(l_eff+1) e^(-kappa r) L_N^(2 l_eff+1)(2 kappa r).

    Modes sharing one coupling strength A = 2 kappa (N + l_eff + 1) and one
    l_eff are eigenfunctions of a single radial operator, hence mutually
    orthogonal over N. A bound state's own mode has kappa tied to its energy;
    see `radial_wavefunction`.
    """
    if not isinstance(N, int) or isinstance(N, bool) or N < 0:
        raise DomainError(f"N must be a non-negative int, got {N!r}")
    if float(l_eff) < 0.0 or not float(kappa) > 0.0:
        raise DomainError(f"need l_eff >= 0 and kappa > 0, got {l_eff}, {kappa}")
    rr = np.asarray(r, dtype=float)
    if np.any(rr < 0.0):
        raise DomainError("r must be non-negative")
    le, kf = float(l_eff), float(kappa)
    lognorm = _radial_log_norm(N, le, kf)
    with np.errstate(divide="ignore"):
        amp = np.exp(lognorm + (le + 1.0) * np.log(rr) - kf * rr)
    out = amp * laguerre_assoc(N, 2.0 * le + 1.0, 2.0 * kf * rr)
    return float(out) if np.ndim(r) == 0 else out


def angular_mode(n: int, B: float, C: float, x, negative_gamma: bool = False):
    """Unit-dx-norm polar factor on [-1, 1].

    Theta_n = N_n (1-x)^(a/2) (1+x)^(b/2) P_n^(a,b)(x) with (a, b) = (B+C, B-C);
    `negative_gamma` swaps the endpoint exponents (and Jacobi parameters),
    which is the orientation solving the equation when gamma_eff < 0. Modes
    sharing (B, C) are mutually orthogonal over n.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise DomainError(f"n must be a non-negative int, got {n!r}")
    Bf, Cf = float(B), float(C)
    if Bf < 0.0 or Cf < 0.0 or Cf > Bf:
        raise DomainError(f"need B >= C >= 0, got B = {B}, C = {C}")
    xx = np.asarray(x, dtype=float)
    if np.any(np.abs(xx) > 1.0):
        raise DomainError("x must lie in [-1, 1]")
    a, b = Bf + Cf, Bf - Cf
    if negative_gamma:
        a, b = b, a
    val = (
        math.exp(_angular_log_norm(n, Bf, Cf))
        * np.power(1.0 - xx, 0.5 * a)
        * np.power(1.0 + xx, 0.5 * b)
        * jacobi_poly(n, a, b, xx)
    )
    return float(val) if np.ndim(x) == 0 else val


def radial_wavefunction(state: BoundState, r):
    """u(r) for the state's own decay rate kappa(energy)."""
    return radial_mode(state.numbers.N, state.l_eff, state.kappa, r)


def angular_wavefunction(state: BoundState, x):
    """Theta(x = cos theta) for the state's own (B, C) and gamma orientation."""
    return angular_mode(
        state.numbers.n,
        float(state.angular.B),
        float(state.angular.C),
        x,
        negative_gamma=float(state.angular.gamma_eff) < 0.0,
    )


def azimuthal_wavefunction(m: int, phi):
    """e^(i m phi) / sqrt(2 pi), unit norm over one turn."""
    if not isinstance(m, int) or isinstance(m, bool):
        raise DomainError(f"m must be an int, got {m!r}")
    pp = np.asarray(phi, dtype=float)
    out = np.exp(1j * m * pp) / math.sqrt(2.0 * math.pi)
    return complex(out) if np.ndim(phi) == 0 else out


def nonrel_limit_check(params: PotentialParams, numbers: QuantumNumbers) -> float:
    """Binding energy over the Bohr-like value -mass a^2 / (2 n'^2).

    Tends to 1 as the coupling weakens (the exact ratio is 1/(1 + a^2/(4 n'^2))
    when beta = gamma = 0). Returns 1.0 by convention at alpha = 0, where both
    numerator and denominator vanish.
    """
    if float(params.alpha) == 0.0:
        return 1.0
    st = solve_bound_state(params, numbers)
    a = params.coupling_factor * abs(float(params.alpha))
    npr = st.n_prime
    bohr = -float(params.mass) * a * a / (2.0 * npr * npr)
    return st.binding / bohr
