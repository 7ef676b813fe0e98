"""Shipped curve families for the scenario suite and the acceptance sweep.

All families approach the boundary point with a linear normal law
(normal exponent 1) so that special-ness is governed by the tangential
exponent alone: special iff m * b > 1.
"""

from __future__ import annotations

import math

from .curves import ExponentCurve, PhaseLaw, SampledCurve
from .geometry import BoundaryFrame


def restricted_family(m: int) -> list[tuple[str, ExponentCurve]]:
    """Six restricted curves: three tangential exponents strictly above
    1/m, each with a constant phase and a logarithmic spiral."""
    exponents = (0.625, 0.75, 1.0) if m <= 2 else (0.375, 0.5, 0.75)
    out = []
    for b in exponents:
        assert m * b > 1.0
        out.append(
            (
                f"b{b:g}_const",
                ExponentCurve(
                    normal_exponent=1.0, tangential_exponent=b, tangential_scale=1.0
                ),
            )
        )
        out.append(
            (
                f"b{b:g}_spiral",
                ExponentCurve(
                    normal_exponent=1.0,
                    tangential_exponent=b,
                    tangential_scale=1.0,
                    phase=PhaseLaw(theta0=0.0, omega=1.0),
                ),
            )
        )
    return out


def fast_restricted_family(m: int) -> list[tuple[str, ExponentCurve]]:
    """Restricted curves with quickly vanishing tangential part; these keep
    slowly-converging functions (products with a tangential factor) inside
    the limit tolerance at double precision."""
    out = []
    for b in (0.75, 0.875, 1.0):
        assert m * b > 1.0
        out.append(
            (
                f"b{b:g}_const",
                ExponentCurve(normal_exponent=1.0, tangential_exponent=b, tangential_scale=1.0),
            )
        )
        out.append(
            (
                f"b{b:g}_spiral",
                ExponentCurve(
                    normal_exponent=1.0,
                    tangential_exponent=b,
                    tangential_scale=1.0,
                    phase=PhaseLaw(theta0=0.0, omega=1.0),
                ),
            )
        )
    return out


def nonspecial_family(m: int) -> list[tuple[str, ExponentCurve]]:
    """Curves violating m*b > 1, with tangential scale large enough
    (c_t^m >= 16) that no grid aperture up to 8 ever captures them.

    Capture verdicts are frame-relative, so these need no domain; the
    scale takes them outside the model eggs, so they are not usable as
    scenario test curves."""
    scale = 16.0 ** (1.0 / m)
    curves = [
        ("boundary_case", ExponentCurve(1.0, 1.0, 1.0 / m, scale)),
        ("slow_tangential", ExponentCurve(1.0, 1.0, 1.0 / (2.0 * m), scale)),
        ("slower_tangential", ExponentCurve(1.0, 1.0, 1.0 / (4.0 * m), scale)),
    ]
    return curves


def radial_curve() -> ExponentCurve:
    """The purely normal base curve zeta - s*nu."""
    return ExponentCurve(normal_exponent=1.0, tangential_scale=0.0)


def tangential_base_curve(frame: BoundaryFrame, schedule, skew: float = 1.0) -> SampledCurve:
    """A special-but-tangential curve inside the normal line:
    Gamma(t) = zeta - (s + i * skew * sqrt(s)) nu.

    No tangential displacement (trivially special), but the normal
    coordinate leaves every Stolz cone, so the projection is tangential and
    the curve is not restricted.
    """
    ts = tuple(schedule)
    points = tuple(
        frame.zeta - frame.nu.scale(complex(s, skew * math.sqrt(s)))
        for s in ((1.0 - t) for t in ts)
    )
    return SampledCurve(ts, points)
