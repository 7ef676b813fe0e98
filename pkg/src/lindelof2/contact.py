"""Order of contact of analytic discs with the boundary, and the type of a
boundary point.

The type is computed by composing rho with candidate analytic discs as a
truncated series in (u, conj u) and searching for the disc of highest
contact.  Pure terms u^L / conj(u)^L in the composition can be killed by
adjusting the disc's degree-L coefficient along the normal direction (the
dependence is exactly affine, so one linear solve per level suffices);
mixed terms cannot, so the search stops there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import TruncationTooSmall, TypeUnboundedAtSearchDepth
from .geometry import BoundaryFrame, ComplexPoint, DomainModel, boundary_frame

COEF_TOL = 1e-10
INFINITE = math.inf


class SeriesJet:
    """Truncated expansion sum c[j,k] u^j conj(u)^k with j + k <= degree.

    Arithmetic is exact on represented degrees: products are truncated at
    the common degree bound, never approximated below it.
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: dict[tuple[int, int], complex] | None = None):
        self.degree = int(degree)
        self.coeffs: dict[tuple[int, int], complex] = {}
        if coeffs:
            for (j, k), value in coeffs.items():
                if j + k <= self.degree and value != 0:
                    self.coeffs[(j, k)] = complex(value)

    @classmethod
    def constant(cls, degree: int, value: complex) -> "SeriesJet":
        return cls(degree, {(0, 0): value})

    @classmethod
    def from_disc_component(cls, degree: int, coefficients, conjugated: bool) -> "SeriesJet":
        """Jet of sum c_n u^n (or its conjugate), n >= 1."""
        coeffs = {}
        for n, c in enumerate(coefficients, start=1):
            if n > degree or c == 0:
                continue
            coeffs[(0, n) if conjugated else (n, 0)] = c.conjugate() if conjugated else c
        return cls(degree, coeffs)

    def __add__(self, other: "SeriesJet") -> "SeriesJet":
        degree = min(self.degree, other.degree)
        out: dict[tuple[int, int], complex] = {}
        for key, value in self.coeffs.items():
            if key[0] + key[1] <= degree:
                out[key] = value
        for key, value in other.coeffs.items():
            if key[0] + key[1] <= degree:
                out[key] = out.get(key, 0j) + value
        return SeriesJet(degree, out)

    def scaled(self, factor: complex) -> "SeriesJet":
        return SeriesJet(self.degree, {k: factor * v for k, v in self.coeffs.items()})

    def __mul__(self, other: "SeriesJet") -> "SeriesJet":
        degree = min(self.degree, other.degree)
        out: dict[tuple[int, int], complex] = {}
        for (j1, k1), v1 in self.coeffs.items():
            for (j2, k2), v2 in other.coeffs.items():
                j, k = j1 + j2, k1 + k2
                if j + k <= degree:
                    key = (j, k)
                    out[key] = out.get(key, 0j) + v1 * v2
        return SeriesJet(degree, out)

    def power(self, n: int) -> "SeriesJet":
        result = SeriesJet.constant(self.degree, 1.0)
        base = self
        k = n
        while k > 0:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def lowest_total_degree(self, coef_tol: float = COEF_TOL) -> int | None:
        """Minimal j + k with |c[j,k]| above coef_tol, or None if the whole
        represented jet vanishes."""
        best = None
        for (j, k), value in self.coeffs.items():
            if abs(value) > coef_tol and (best is None or j + k < best):
                best = j + k
        return best

    def at_total_degree(self, level: int, coef_tol: float = COEF_TOL):
        return {
            (j, k): v for (j, k), v in self.coeffs.items() if j + k == level and abs(v) > coef_tol
        }

    def evaluate(self, u: complex) -> complex:
        uc = u.conjugate()
        return sum(v * u**j * uc**k for (j, k), v in self.coeffs.items())


@dataclass(frozen=True)
class AnalyticDisc:
    """phi(u) = base + sum coefficients[n-1] * u^n, a parametrized complex
    curve through `base`; nonsingular means the degree-1 coefficient is
    nonzero."""

    base: ComplexPoint
    coefficients: tuple[ComplexPoint, ...]

    def __post_init__(self):
        if not self.coefficients or self.coefficients[0].norm() == 0.0:
            raise ValueError("disc must be nonsingular: first coefficient nonzero")

    @property
    def degree(self) -> int:
        return len(self.coefficients)

    def point_at(self, u: complex) -> ComplexPoint:
        z1 = complex(self.base.z1)
        z2 = complex(self.base.z2)
        un = 1.0 + 0j
        for c in self.coefficients:
            un *= u
            z1 += c.z1 * un
            z2 += c.z2 * un
        return ComplexPoint(z1, z2)

    def with_added(self, n: int, direction: ComplexPoint, amount: complex) -> "AnalyticDisc":
        """Return the disc with amount*direction added to the degree-n
        coefficient (padding with zeros if needed)."""
        coeffs = list(self.coefficients)
        while len(coeffs) < n:
            coeffs.append(ComplexPoint(0j, 0j))
        coeffs[n - 1] = coeffs[n - 1] + direction.scale(amount)
        return AnalyticDisc(self.base, tuple(coeffs))


def tangent_line_disc(frame: BoundaryFrame) -> AnalyticDisc:
    """The degree-1 disc along the complex tangent: phi(u) = zeta + u*tau."""
    return AnalyticDisc(frame.zeta, (frame.tau,))


def required_truncation(domain: DomainModel, disc_degree: int) -> int:
    """Total degree of rho composed with any disc of the given degree:
    2 * (max holomorphic monomial degree) * disc_degree."""
    return 2 * domain.rho.max_holomorphic_degree() * disc_degree


def compose_rho_disc(domain: DomainModel, disc: AnalyticDisc, truncation: int) -> SeriesJet:
    """Jet of rho(phi(u)) in (u, conj u) up to total degree `truncation`.

    Exact for polynomial rho whenever the truncation covers the full
    composition degree; raises TruncationTooSmall otherwise, because a
    vanishing truncated jet could then hide a nonzero higher term.
    """
    needed = required_truncation(domain, disc.degree)
    if truncation < needed:
        raise TruncationTooSmall(
            f"truncation {truncation} below required {needed} for disc degree {disc.degree}"
        )
    z1 = SeriesJet.constant(truncation, disc.base.z1) + SeriesJet.from_disc_component(
        truncation, [c.z1 for c in disc.coefficients], conjugated=False
    )
    z2 = SeriesJet.constant(truncation, disc.base.z2) + SeriesJet.from_disc_component(
        truncation, [c.z2 for c in disc.coefficients], conjugated=False
    )
    z1c = SeriesJet.constant(truncation, disc.base.z1.conjugate()) + SeriesJet.from_disc_component(
        truncation, [c.z1 for c in disc.coefficients], conjugated=True
    )
    z2c = SeriesJet.constant(truncation, disc.base.z2.conjugate()) + SeriesJet.from_disc_component(
        truncation, [c.z2 for c in disc.coefficients], conjugated=True
    )
    total = SeriesJet(truncation)
    for coef, a, b, c, d in domain.rho.terms:
        term = SeriesJet.constant(truncation, coef)
        if a:
            term = term * z1.power(a)
        if b:
            term = term * z1c.power(b)
        if c:
            term = term * z2.power(c)
        if d:
            term = term * z2c.power(d)
        total = total + term
    return total


@dataclass(frozen=True)
class ContactOrder:
    """Order of vanishing of rho along a disc; INFINITE if rho vanishes
    identically on it (within the truncation window)."""

    order: float  # positive integer, or INFINITE
    witnessed_disc: AnalyticDisc

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.order)


def contact_order(
    domain: DomainModel,
    disc: AnalyticDisc,
    truncation: int,
    coef_tol: float = COEF_TOL,
) -> ContactOrder:
    """Minimal total degree of a surviving jet coefficient of rho∘phi."""
    jet = compose_rho_disc(domain, disc, truncation)
    level = jet.lowest_total_degree(coef_tol)
    if level is None:
        return ContactOrder(INFINITE, disc)
    return ContactOrder(level, disc)


def _split_pure_mixed(level_coeffs: dict[tuple[int, int], complex], level: int):
    pure = {key: v for key, v in level_coeffs.items() if key in ((level, 0), (0, level))}
    mixed = {key: v for key, v in level_coeffs.items() if key not in ((level, 0), (0, level))}
    return pure, mixed


def point_type(
    domain: DomainModel,
    zeta: ComplexPoint,
    disc_degree_bound: int = 4,
    truncation: int | None = None,
    coef_tol: float = COEF_TOL,
) -> int:
    """Type of the boundary point zeta: the maximal contact order over
    nonsingular tangent discs found by greedy jet cancellation.

    Starting from the tangent-line disc, whenever the lowest surviving jet
    level L carries only pure terms, the degree-L disc coefficient along nu
    is solved for (affinely, exactly) to cancel them, raising the level;
    a mixed surviving term stops the search since no holomorphic
    perturbation of the disc can remove it.
    """
    frame = boundary_frame(domain, zeta)
    if truncation is None:
        truncation = required_truncation(domain, disc_degree_bound)
    disc = tangent_line_disc(frame)
    best = 0
    while True:
        trunc = max(truncation, required_truncation(domain, disc.degree))
        jet = compose_rho_disc(domain, disc, trunc)
        constant = abs(jet.coeffs.get((0, 0), 0j))
        if constant > 1e-12:
            raise ValueError(f"disc base is off the boundary: |rho(zeta)| = {constant:.3e}")
        level = jet.lowest_total_degree(coef_tol)
        if level is None or level > truncation:
            raise TypeUnboundedAtSearchDepth(
                f"cancellation reached the truncation limit {truncation}; "
                f"point may be of infinite type or the disc bound {disc_degree_bound} is too small"
            )
        best = max(best, level)
        pure, mixed = _split_pure_mixed(jet.at_total_degree(level, coef_tol), level)
        if mixed or not pure:
            return best
        if level > disc_degree_bound:
            return best
        # The (level, 0) coefficient is affine in the degree-level normal
        # coefficient of the disc; one probe determines the slope exactly.
        a0 = jet.coeffs.get((level, 0), 0j)
        probe = disc.with_added(level, frame.nu, 1.0)
        probe_trunc = max(truncation, required_truncation(domain, probe.degree))
        jet_probe = compose_rho_disc(domain, probe, probe_trunc)
        slope = jet_probe.coeffs.get((level, 0), 0j) - a0
        if abs(slope) < 1e-12:
            return best
        disc = disc.with_added(level, frame.nu, -a0 / slope)
