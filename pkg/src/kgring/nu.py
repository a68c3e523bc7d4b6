"""Reduction of hypergeometric-type equations to classical polynomial data.

The input is a second-order equation in self-similar form,

    psi'' + (tau_t(s)/sigma(s)) psi' + (sigma_t(s)/sigma(s)^2) psi = 0,

with deg sigma <= 2 (nonzero), deg tau_t <= 1, deg sigma_t <= 2. Writing
psi = phi(s) y(s) with phi'/phi = pi(s)/sigma(s) and

    pi = (sigma' - tau_t)/2 +- sqrt(((sigma' - tau_t)/2)^2 - sigma_t + k sigma)

removes the first-derivative singularity whenever k makes the radicand a
perfect square (its s-discriminant vanishes, a quadratic condition in k).
The transformed equation sigma y'' + tau y' + lambda_bar y = 0 with
tau = tau_t + 2 pi and lambda_bar = k + pi' has polynomial solutions of
degree n exactly when

    lambda_bar = -n tau' - n(n-1)/2 sigma'',

which is the quantization rule everything downstream consumes. A branch is
physical when tau' < 0; among physical branches the bound-state chain also
needs phi to be an admissible weight factor (non-negative exponents at the
finite roots of sigma, an integrable orthogonality weight there, and a
decaying exponential part).

All algebra runs on `Poly`, so rational input yields rational k, pi, tau and
lambda_bar whenever the needed square roots are rational.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    DegeneracyWarning,
    DegreeError,
    DomainError,
    NoPhysicalBranch,
    NoRealK,
    NotAPerfectSquare,
    UnclassifiedSigma,
)
from .polynomials import Poly, Scalar, _exact_sqrt, perfect_square_root

_HALF = Fraction(1, 2)


class Family(enum.Enum):
    """Which classical family the polynomial solutions y_n belong to."""

    LAGUERRE = "laguerre"
    JACOBI = "jacobi"
    HERMITE = "hermite"


@dataclass(frozen=True)
class NUProblem:
    """The three coefficient polynomials of the self-similar form."""

    sigma: Poly
    tau_tilde: Poly
    sigma_tilde: Poly

    def __post_init__(self):
        if self.sigma.is_zero:
            raise DegreeError("sigma must be nonzero")
        if self.sigma.degree > 2:
            raise DegreeError(f"deg sigma = {self.sigma.degree} > 2")
        if self.tau_tilde.degree > 1:
            raise DegreeError(f"deg tau_tilde = {self.tau_tilde.degree} > 1")
        if self.sigma_tilde.degree > 2:
            raise DegreeError(f"deg sigma_tilde = {self.sigma_tilde.degree} > 2")

    def half_shift(self) -> Poly:
        """(sigma' - tau_tilde)/2, the polynomial part of every pi."""
        return (self.sigma.derivative() - self.tau_tilde) * _HALF

    def radicand(self, k: Scalar) -> Poly:
        """Quadratic under pi's square root for a given k."""
        h = self.half_shift()
        return h * h - self.sigma_tilde + self.sigma * k


@dataclass(frozen=True)
class NUBranch:
    """One sign choice of pi for one root k of the discriminant condition."""

    k: Scalar
    sign: int
    pi: Poly
    tau: Poly
    lambda_bar: Scalar

    @property
    def tau_prime(self) -> Scalar:
        return self.tau.coefficient(1)

    @property
    def physical(self) -> bool:
        return self.tau_prime < 0


@dataclass(frozen=True)
class Quantization:
    """lambda_bar_n = constant + linear*n + quadratic*n^2 for the family."""

    family: Family
    constant: Scalar
    linear: Scalar
    quadratic: Scalar

    def evaluate(self, n: int) -> Scalar:
        if not isinstance(n, int) or n < 0:
            raise DomainError(f"polynomial degree must be a non-negative int, got {n!r}")
        return self.constant + self.linear * n + self.quadratic * n * n


@dataclass(frozen=True)
class PhiFactor:
    """phi as prod (s - root_i)^exponent_i * exp(rate2 s^2 + rate1 s)."""

    roots: tuple
    exponents: tuple
    rate_linear: Scalar
    rate_quadratic: Scalar


@dataclass(frozen=True)
class Chain:
    """A fully selected reduction: problem -> k -> branch -> eigenvalue rule."""

    problem: NUProblem
    family: Family
    candidates: tuple
    branch: NUBranch
    phi: PhiFactor
    quantization: Quantization


def _quad_real_roots(d2: Scalar, d1: Scalar, d0: Scalar, rel_tol: float) -> list:
    """Real roots of d2 k^2 + d1 k + d0, exact when the inputs allow it."""
    exact = all(isinstance(v, (int, Fraction)) for v in (d2, d1, d0))
    if exact:
        if d2 == 0:
            if d1 == 0:
                if d0 == 0:
                    raise NoRealK("discriminant condition degenerates to 0 = 0")
                raise NoRealK("discriminant condition is a nonzero constant")
            return [Fraction(-d0, 1) / d1]
        inner = d1 * d1 - 4 * d2 * d0
        if inner < 0:
            raise NoRealK(f"discriminant of the k-condition is {inner} < 0")
        s = _exact_sqrt(Fraction(inner))
        if s is None:
            sf = math.sqrt(inner)
            return sorted({(-float(d1) - sf) / (2 * float(d2)), (-float(d1) + sf) / (2 * float(d2))})
        roots = {(-d1 - s) / (2 * d2), (-d1 + s) / (2 * d2)}
        return sorted(roots, key=float)

    f2, f1, f0 = float(d2), float(d1), float(d0)
    scale = max(1.0, abs(f2), abs(f1), abs(f0))
    if abs(f2) <= rel_tol * scale:
        if abs(f1) <= rel_tol * scale:
            if abs(f0) <= rel_tol * scale:
                raise NoRealK("discriminant condition degenerates to 0 = 0")
            raise NoRealK("discriminant condition is a nonzero constant")
        return [-f0 / f1]
    inner = f1 * f1 - 4.0 * f2 * f0
    if inner < 0.0:
        if inner < -rel_tol * scale * scale:
            raise NoRealK(f"discriminant of the k-condition is {inner:g} < 0")
        inner = 0.0
    if inner == 0.0:
        return [-f1 / (2.0 * f2)]
    s = math.sqrt(inner)
    q = -(f1 + math.copysign(s, f1)) / 2.0
    return sorted({q / f2, f0 / q})


def candidate_k(problem: NUProblem, rel_tol: float = 1e-9) -> list:
    """All real k for which the radicand is a perfect square, ascending.

    The radicand's s-discriminant is quadratic in k; each real root is kept
    only if the resulting radicand actually passes the perfect-square check
    (guards against cancellation noise on float input).
    """
    h = problem.half_shift()
    base = h * h - problem.sigma_tilde
    disc2, disc1, disc0 = _k_discriminant_coeffs(base, problem.sigma)
    roots = _quad_real_roots(disc2, disc1, disc0, rel_tol)
    out = []
    for k in roots:
        try:
            perfect_square_root(problem.radicand(k), rel_tol)
        except NotAPerfectSquare:
            continue
        out.append(k)
    if not out:
        raise NoRealK("no k root survives the perfect-square check")
    return out


def _k_discriminant_coeffs(base: Poly, sigma: Poly):
    """Coefficients in k of disc_s(base + k sigma) = B(k)^2 - 4 A(k) C(k)."""
    a = Poly([base.coefficient(2), sigma.coefficient(2)])
    b = Poly([base.coefficient(1), sigma.coefficient(1)])
    c = Poly([base.coefficient(0), sigma.coefficient(0)])
    disc = b * b - a * c * 4
    return disc.coefficient(2), disc.coefficient(1), disc.coefficient(0)


def branches(problem: NUProblem, k: Scalar, rel_tol: float = 1e-9) -> tuple[NUBranch, NUBranch]:
    """Both sign choices of pi at a given k, plus branch first."""
    q = perfect_square_root(problem.radicand(k), rel_tol)
    h = problem.half_shift()
    out = []
    for sign in (1, -1):
        pi = h + q if sign > 0 else h - q
        tau = problem.tau_tilde + pi * 2
        lam_bar = k + pi.coefficient(1)
        out.append(NUBranch(k=k, sign=sign, pi=pi, tau=tau, lambda_bar=lam_bar))
    return tuple(out)


def select_physical(candidates: Sequence[NUBranch]) -> NUBranch:
    """The branch with decreasing tau; ties go to the larger lambda_bar.

    Raises NoPhysicalBranch when no candidate has tau' < 0. When more than one
    does, a DegeneracyWarning is emitted and the largest lambda_bar wins.
    """
    phys = [b for b in candidates if b.physical]
    if not phys:
        raise NoPhysicalBranch("no branch has tau' < 0")
    if len(phys) > 1:
        warnings.warn(
            "multiple branches have tau' < 0; taking the larger lambda_bar",
            DegeneracyWarning,
            stacklevel=2,
        )
        phys.sort(key=lambda b: float(b.lambda_bar), reverse=True)
    return phys[0]


def classify(problem: NUProblem) -> Family:
    """Family of the polynomial solutions, from sigma's root pattern.

    Two distinct real roots -> Jacobi, one simple root -> Laguerre, no root
    (constant sigma) -> Hermite. A double or complex pair is not reducible to
    a classical weight and raises UnclassifiedSigma.
    """
    d = problem.sigma.degree
    if d == 0:
        return Family.HERMITE
    if d == 1:
        return Family.LAGUERRE
    a, b, c = (problem.sigma.coefficient(i) for i in (2, 1, 0))
    disc = b * b - 4 * a * c
    if disc > 0:
        return Family.JACOBI
    raise UnclassifiedSigma(f"sigma discriminant {disc} is not positive")


def sigma_roots(problem: NUProblem) -> tuple:
    """Real roots of sigma, ascending, exact when the arithmetic allows."""
    fam = classify(problem)
    if fam is Family.HERMITE:
        return ()
    if fam is Family.LAGUERRE:
        c1, c0 = problem.sigma.coefficient(1), problem.sigma.coefficient(0)
        return (-c0 / c1,)
    a, b, c = (problem.sigma.coefficient(i) for i in (2, 1, 0))
    disc = b * b - 4 * a * c
    if isinstance(disc, Fraction) or isinstance(disc, int):
        s = _exact_sqrt(Fraction(disc))
        if s is not None:
            return tuple(sorted(((-b - s) / (2 * a), (-b + s) / (2 * a)), key=float))
    sf = math.sqrt(float(disc))
    return tuple(sorted(((-float(b) - sf) / (2 * float(a)), (-float(b) + sf) / (2 * float(a)))))


def quantization(problem: NUProblem, branch: NUBranch) -> Quantization:
    """Closed-form lambda_bar_n from tau' and sigma''."""
    tau1 = branch.tau_prime
    sig2 = problem.sigma.coefficient(2) * 2
    half_sig2 = sig2 * _HALF if isinstance(sig2, (int, Fraction)) else sig2 * 0.5
    zero = tau1 * 0
    return Quantization(
        family=classify(problem),
        constant=zero,
        linear=-tau1 + half_sig2,
        quadratic=-half_sig2,
    )


def quantize(problem: NUProblem, branch: NUBranch, n: int) -> Scalar:
    """lambda_bar required for a degree-n polynomial solution."""
    return quantization(problem, branch).evaluate(n)


def phi_parameters(problem: NUProblem, branch: NUBranch) -> PhiFactor:
    """Decompose phi'/phi = pi/sigma into root exponents and exponential rates.

    At each simple root r of sigma the factor is (s - r)^(pi(r)/sigma'(r));
    what remains of pi/sigma after removing those poles integrates to the
    exponential part.
    """
    fam = classify(problem)
    pi = branch.pi
    if fam is Family.HERMITE:
        c0 = problem.sigma.coefficient(0)
        return PhiFactor(
            roots=(),
            exponents=(),
            rate_linear=pi.coefficient(0) / c0,
            rate_quadratic=pi.coefficient(1) / (2 * c0),
        )
    if fam is Family.LAGUERRE:
        c1 = problem.sigma.coefficient(1)
        (root,) = sigma_roots(problem)
        zero = c1 * 0
        return PhiFactor(
            roots=(root,),
            exponents=(pi(root) / c1,),
            rate_linear=pi.coefficient(1) / c1,
            rate_quadratic=zero,
        )
    roots = sigma_roots(problem)
    dsigma = problem.sigma.derivative()
    exps = tuple(pi(r) / dsigma(r) for r in roots)
    zero = exps[0] * 0
    return PhiFactor(roots=roots, exponents=exps, rate_linear=zero, rate_quadratic=zero)


def _admissible(problem: NUProblem, branch: NUBranch, phi: PhiFactor, tol: float) -> bool:
    """Weight-factor test: integrable weight, no negative root exponents, decay."""
    if any(float(e) < -tol for e in phi.exponents):
        return False
    # the family weight rho solves (sigma rho)' = tau rho, so near a simple
    # root s0 of sigma it scales as (s - s0)^(tau(s0)/sigma'(s0) - 1);
    # integrability of rho demands tau(s0)/sigma'(s0) > 0
    dsigma = problem.sigma.derivative()
    for s0 in sigma_roots(problem):
        slope = float(dsigma(s0))
        if slope == 0.0 or float(branch.tau(s0)) / slope <= tol:
            return False
    rq, rl = float(phi.rate_quadratic), float(phi.rate_linear)
    fam = classify(problem)
    if fam is Family.HERMITE:
        return rq < 0.0
    if fam is Family.LAGUERRE:
        # domain runs from sigma's root toward +inf when sigma' > 0, else -inf
        direction = 1.0 if float(problem.sigma.coefficient(1)) > 0 else -1.0
        return direction * rl < 0.0
    return True  # Jacobi: compact domain, no exponential part


def solution_chain(problem: NUProblem, rel_tol: float = 1e-9) -> Chain:
    """Pick the bound-state reduction among every k and sign choice.

    tau' < 0 alone does not single out a branch (typically each k owns one
    decreasing-tau branch), so the chain additionally requires phi to be an
    admissible weight factor. Distinct survivors beyond the first trigger a
    DegeneracyWarning and the larger lambda_bar is kept, mirroring
    `select_physical`.
    """
    fam = classify(problem)
    cands = candidate_k(problem, rel_tol)
    admissible: list[NUBranch] = []
    for k in cands:
        try:
            pair = branches(problem, k, rel_tol)
        except NotAPerfectSquare:
            continue
        for b in pair:
            if not b.physical:
                continue
            if _admissible(problem, b, phi_parameters(problem, b), rel_tol):
                admissible.append(b)
    seen = set()
    distinct = []
    for b in admissible:
        key = (float(b.k), b.pi.values)  # same pi at the same k is the same branch
        if key not in seen:
            seen.add(key)
            distinct.append(b)
    if not distinct:
        raise NoPhysicalBranch("no admissible decreasing-tau branch among k candidates")
    branch = distinct[0] if len(distinct) == 1 else select_physical(distinct)
    return Chain(
        problem=problem,
        family=fam,
        candidates=tuple(cands),
        branch=branch,
        phi=phi_parameters(problem, branch),
        quantization=quantization(problem, branch),
    )
