"""Catalog of bounded holomorphic test functions on the egg domains.

All entries live on |z1| < 1 (every egg is contained in that slab), carry a
certified sup-norm bound, and have known behavior at the boundary point
(1, 0): an honest limit, or bounded oscillation that defeats any limit.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import PointLeftDomain, UnknownFunction
from .geometry import ComplexPoint, DomainModel, Membership

# When enabled (test builds), every evaluation asserts |f| <= sup_norm.
STRICT_BOUNDS = False


@dataclass(frozen=True)
class BoundedHolomorphicFunction:
    name: str
    sup_norm: float
    expected_behavior: str  # "limit" | "oscillating" | "unknown"
    expected_limit: complex | None = None
    _fn: Callable[[complex, complex], complex] = field(repr=False, default=None)

    def __call__(self, p: ComplexPoint) -> complex:
        value = self._fn(complex(p.z1), complex(p.z2))
        if STRICT_BOUNDS and abs(value) > self.sup_norm * (1.0 + 1e-9):
            raise AssertionError(
                f"{self.name} exceeded its certified bound: |{value!r}| > {self.sup_norm}"
            )
        return value


def _inner_type(z1: complex, z2: complex) -> complex:
    # (z1+1)/(z1-1) maps |z1| < 1 into Re <= 0, so the modulus stays <= 1;
    # the real part diverges to -inf toward z1 = 1.
    return cmath.exp((z1 + 1.0) / (z1 - 1.0))


def _log_spiral(z1: complex, z2: complex) -> complex:
    # (1 - z1)^i with the principal branch; 1 - z1 has positive real part
    # on |z1| < 1, so the branch cut is never crossed.
    return cmath.exp(1j * cmath.log(1.0 - z1))


_CATALOG = {
    "COORD1": BoundedHolomorphicFunction(
        name="COORD1",
        sup_norm=1.0,
        expected_behavior="limit",
        expected_limit=1.0 + 0j,
        _fn=lambda z1, z2: z1,
    ),
    "PRODUCT": BoundedHolomorphicFunction(
        name="PRODUCT",
        sup_norm=1.0,
        expected_behavior="limit",
        expected_limit=0j,
        _fn=lambda z1, z2: z1 * z2,
    ),
    "INNER": BoundedHolomorphicFunction(
        name="INNER",
        sup_norm=1.0,
        expected_behavior="limit",
        expected_limit=0j,
        _fn=_inner_type,
    ),
    "SPIRAL": BoundedHolomorphicFunction(
        name="SPIRAL",
        sup_norm=math.exp(math.pi / 2.0),
        expected_behavior="oscillating",
        _fn=_log_spiral,
    ),
}


def catalog(name: str) -> BoundedHolomorphicFunction:
    try:
        return _CATALOG[name]
    except KeyError:
        raise UnknownFunction(f"no catalog entry {name!r}; known: {sorted(_CATALOG)}") from None


def catalog_names() -> tuple[str, ...]:
    return tuple(sorted(_CATALOG))


def eval_along(
    f: BoundedHolomorphicFunction,
    curve,
    frame,
    domain: DomainModel,
    schedule=None,
) -> list[tuple[float, complex]]:
    """Evaluate f along the curve, membership-checking every point first.

    Raises PointLeftDomain at the first sample that is not strictly inside;
    that always signals a bad curve/domain pairing rather than a function
    problem.
    """
    from .curves import curve_samples

    ts, points = curve_samples(curve, frame, schedule)
    out = []
    for t, p in zip(ts, points):
        if domain.contains(p) is not Membership.INSIDE:
            raise PointLeftDomain(t, p)
        out.append((t, f(p)))
    return out


def holomorphy_residual(
    f: BoundedHolomorphicFunction, p: ComplexPoint, step: float = 1e-5
) -> float:
    """Largest Cauchy-Riemann residual |d f / d conj(z_j)| from centered
    differences in each variable; ~0 for holomorphic f away from
    singularities."""
    z1, z2 = complex(p.z1), complex(p.z2)

    def residual(move) -> float:
        fx = (f(move(step)) - f(move(-step))) / (2.0 * step)
        fy = (f(move(1j * step)) - f(move(-1j * step))) / (2.0 * step)
        return abs((fx + 1j * fy) / 2.0)

    r1 = residual(lambda h: ComplexPoint(z1 + h, z2))
    r2 = residual(lambda h: ComplexPoint(z1, z2 + h))
    return max(r1, r2)
