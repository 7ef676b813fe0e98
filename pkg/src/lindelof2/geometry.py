"""Domains in C^2 with polynomial defining functions, boundary frames,
and projections onto the complex normal line.

A domain is { z : rho(z) < 0 } for a real-valued polynomial rho in
(z1, conj z1, z2, conj z2).  Keeping rho polynomial makes membership
verdicts exact up to floating arithmetic, which every downstream check
relies on.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NotOnBoundary, SingularPoint

GRADIENT_EPS = 1e-10
DEFAULT_MEMBERSHIP_TOL = 1e-12


def _check_finite(value: complex, what: str) -> None:
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValueError(f"{what} must be finite, got {value!r}")


@dataclass(frozen=True)
class ComplexPoint:
    """A point (z1, z2) in C^2."""

    z1: complex
    z2: complex

    def __post_init__(self):
        _check_finite(complex(self.z1), "z1")
        _check_finite(complex(self.z2), "z2")

    def __add__(self, other: "ComplexPoint") -> "ComplexPoint":
        return ComplexPoint(self.z1 + other.z1, self.z2 + other.z2)

    def __sub__(self, other: "ComplexPoint") -> "ComplexPoint":
        return ComplexPoint(self.z1 - other.z1, self.z2 - other.z2)

    def scale(self, factor: complex) -> "ComplexPoint":
        return ComplexPoint(factor * self.z1, factor * self.z2)

    def norm(self) -> float:
        return math.hypot(abs(self.z1), abs(self.z2))


def hermitian_inner(u: ComplexPoint, v: ComplexPoint) -> complex:
    """<u, v> = u1 conj(v1) + u2 conj(v2), linear in the first slot."""
    return u.z1 * v.z1.conjugate() + u.z2 * v.z2.conjugate()


class Membership(Enum):
    INSIDE = "Inside"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class DefiningFunction:
    """Real-valued polynomial sum of terms
    coef * z1^a * conj(z1)^b * z2^c * conj(z2)^d.

    Each term is (coef, a, b, c, d) with real coef and non-negative integer
    powers.  The term list must be Hermitian-symmetric: for every
    (coef, a, b, c, d) the swapped term (coef, b, a, d, c) is present, which
    forces real values everywhere.
    """

    terms: tuple[tuple[float, int, int, int, int], ...]

    def __post_init__(self):
        normalized = []
        for term in self.terms:
            coef, a, b, c, d = term
            if any(p < 0 or int(p) != p for p in (a, b, c, d)):
                raise ValueError(f"powers must be non-negative integers: {term}")
            if not math.isfinite(coef):
                raise ValueError(f"coefficient must be finite: {term}")
            normalized.append((float(coef), int(a), int(b), int(c), int(d)))
        object.__setattr__(self, "terms", tuple(normalized))
        collected: dict[tuple[int, int, int, int], float] = {}
        for coef, a, b, c, d in self.terms:
            collected[(a, b, c, d)] = collected.get((a, b, c, d), 0.0) + coef
        for (a, b, c, d), coef in collected.items():
            mirror = collected.get((b, a, d, c), 0.0)
            if abs(coef - mirror) > 1e-14 * max(1.0, abs(coef)):
                raise ValueError(
                    f"terms are not Hermitian-symmetric: monomial {(a, b, c, d)} "
                    f"has coefficient {coef} but its conjugate has {mirror}"
                )

    def __call__(self, z1, z2):
        """Evaluate at scalars or numpy arrays of z1, z2; returns real values."""
        z1 = np.asarray(z1, dtype=complex)
        z2 = np.asarray(z2, dtype=complex)
        total = np.zeros(np.broadcast(z1, z2).shape, dtype=complex)
        z1c = np.conj(z1)
        z2c = np.conj(z2)
        for coef, a, b, c, d in self.terms:
            total = total + coef * z1**a * z1c**b * z2**c * z2c**d
        out = total.real
        return float(out) if out.ndim == 0 else out

    def conjugate_gradient(self, p: ComplexPoint) -> ComplexPoint:
        """The complex gradient 2*(d rho/d conj(z1), d rho/d conj(z2));
        for real rho this is the real gradient written as a C^2 vector,
        so it points along the outward normal on the boundary."""
        g1 = 0j
        g2 = 0j
        z1, z2 = complex(p.z1), complex(p.z2)
        z1c, z2c = z1.conjugate(), z2.conjugate()
        for coef, a, b, c, d in self.terms:
            if b > 0:
                g1 += coef * b * z1**a * z1c ** (b - 1) * z2**c * z2c**d
            if d > 0:
                g2 += coef * d * z1**a * z1c**b * z2**c * z2c ** (d - 1)
        return ComplexPoint(2.0 * g1, 2.0 * g2)

    def max_holomorphic_degree(self) -> int:
        """max over terms of the holomorphic degree a + c; bounds jet
        truncations needed to witness contact."""
        return max(a + c for _, a, b, c, d in self.terms)


@dataclass(frozen=True)
class DomainModel:
    """Omega = { rho < 0 } with a membership tolerance and a radius bound
    used by samplers."""

    rho: DefiningFunction
    membership_tol: float = DEFAULT_MEMBERSHIP_TOL
    bounding_radius: float = 2.0

    def eval_rho(self, p: ComplexPoint) -> float:
        return self.rho(p.z1, p.z2)

    def contains(self, p: ComplexPoint) -> Membership:
        return self.verdict(self.eval_rho(p))

    def verdict(self, rho_value: float) -> Membership:
        if rho_value < -self.membership_tol:
            return Membership.INSIDE
        if rho_value > self.membership_tol:
            return Membership.OUTSIDE
        return Membership.BOUNDARY

    def inside_mask(self, z1, z2) -> np.ndarray:
        """Vectorized strict-inside test for arrays of coordinates."""
        return np.asarray(self.rho(z1, z2)) < -self.membership_tol


def eval_rho(domain: DomainModel, z: ComplexPoint) -> float:
    return domain.eval_rho(z)


def contains(domain: DomainModel, p: ComplexPoint) -> Membership:
    return domain.contains(p)


def egg_domain(m: int, membership_tol: float = DEFAULT_MEMBERSHIP_TOL) -> DomainModel:
    """|z1|^2 + |z2|^(2m) < 1; the unit ball when m = 1.

    The boundary point (1, 0) has type 2m: the complex tangent line there
    is the z2-axis and rho restricted to it is |z2|^(2m).
    """
    if m < 1 or int(m) != m:
        raise ValueError(f"egg exponent must be a positive integer, got {m}")
    rho = DefiningFunction(((1.0, 1, 1, 0, 0), (1.0, 0, 0, int(m), int(m)), (-1.0, 0, 0, 0, 0)))
    return DomainModel(rho=rho, membership_tol=membership_tol, bounding_radius=math.sqrt(2.0))


def perturbed_egg_domain(
    m: int, alpha: float, membership_tol: float = DEFAULT_MEMBERSHIP_TOL
) -> DomainModel:
    """|z1 + alpha*z2^2|^2 + |z2|^(2m) < 1: an egg sheared by the
    holomorphic map w1 = z1 + alpha*z2^2.

    At (1, 0) the tangent-line disc only reaches contact order 2, while a
    degree-2 disc bending with the shear reaches the true type 2m.  Used to
    exercise the cancellation step of the type search.
    """
    if m < 1 or int(m) != m:
        raise ValueError(f"egg exponent must be a positive integer, got {m}")
    a = float(alpha)
    rho = DefiningFunction(
        (
            (1.0, 1, 1, 0, 0),
            (a, 1, 0, 0, 2),
            (a, 0, 1, 2, 0),
            (a * a, 0, 0, 2, 2),
            (1.0, 0, 0, int(m), int(m)),
            (-1.0, 0, 0, 0, 0),
        )
    )
    return DomainModel(rho=rho, membership_tol=membership_tol, bounding_radius=2.0)


BUILTIN_DOMAINS = {
    "egg": egg_domain,
    "perturbed_egg": perturbed_egg_domain,
}


@dataclass(frozen=True)
class BoundaryFrame:
    """A boundary point with its unit outward normal, a canonical unit
    complex tangent, and the (claimed or computed) type."""

    zeta: ComplexPoint
    nu: ComplexPoint
    tau: ComplexPoint
    type_m: int | None = None

    def normal_coordinate(self, p: ComplexPoint) -> complex:
        """w = <zeta - p, nu>: positive real part means p is on the inner
        side of the tangent plane."""
        return hermitian_inner(self.zeta - p, self.nu)

    def tangential_coordinate(self, p: ComplexPoint) -> complex:
        return hermitian_inner(p - self.zeta, self.tau)


def boundary_frame(
    domain: DomainModel, zeta: ComplexPoint, type_m: int | None = None
) -> BoundaryFrame:
    """Build the frame at zeta: nu normalized from the gradient, tau the
    canonical rotation (a, b) -> (-conj b, conj a) of nu."""
    value = domain.eval_rho(zeta)
    if abs(value) > domain.membership_tol:
        raise NotOnBoundary(f"rho(zeta) = {value:.3e} exceeds tolerance {domain.membership_tol:.1e}")
    grad = domain.rho.conjugate_gradient(zeta)
    gnorm = grad.norm()
    if gnorm < GRADIENT_EPS:
        raise SingularPoint(f"|grad rho(zeta)| = {gnorm:.3e} below {GRADIENT_EPS:.1e}")
    nu = grad.scale(1.0 / gnorm)
    tau = ComplexPoint(-nu.z2.conjugate(), nu.z1.conjugate())
    return BoundaryFrame(zeta=zeta, nu=nu, tau=tau, type_m=type_m)


def project_to_normal_line(p: ComplexPoint, frame: BoundaryFrame) -> ComplexPoint:
    """Affine orthogonal projection onto the complex normal line
    zeta + C*nu: gamma = zeta + <p - zeta, nu> nu."""
    coeff = hermitian_inner(p - frame.zeta, frame.nu)
    return frame.zeta + frame.nu.scale(coeff)


def gradient_nonvanishing_near(
    domain: DomainModel,
    zeta: ComplexPoint,
    radius: float = 0.1,
    n_samples: int = 64,
    seed: int = 20240,
) -> bool:
    """Sample points within `radius` of zeta and verify the gradient stays
    above the singularity threshold on the whole neighborhood."""
    rng = np.random.default_rng(seed)
    for _ in range(n_samples):
        offset = rng.normal(size=4) * (radius / 2.0)
        p = ComplexPoint(
            zeta.z1 + offset[0] + 1j * offset[1], zeta.z2 + offset[2] + 1j * offset[3]
        )
        if (p - zeta).norm() > radius:
            continue
        if domain.rho.conjugate_gradient(p).norm() < GRADIENT_EPS:
            return False
    return True


def boundary_point_on_egg(m: int, angle_pair: tuple[float, float, float]) -> ComplexPoint:
    """A boundary point of egg_domain(m) from (r1_angle, phase1, phase2):
    |z1| = cos(r1_angle) and |z2|^(2m) = 1 - |z1|^2 exactly."""
    t, p1, p2 = angle_pair
    r1 = math.cos(t)
    r2 = (1.0 - r1 * r1) ** (1.0 / (2 * m))
    return ComplexPoint(r1 * cmath.exp(1j * p1), r2 * cmath.exp(1j * p2))
