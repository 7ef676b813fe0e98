import cmath
import math

import numpy as np
import pytest
from scipy.stats import qmc

from lindelof2 import (
    ComplexPoint,
    ExponentCurve,
    Membership,
    PointLeftDomain,
    UnknownFunction,
    boundary_frame,
    catalog,
    catalog_names,
    egg_domain,
    eval_along,
)
from lindelof2.families import restricted_family
from lindelof2.holo import holomorphy_residual

EGG2 = egg_domain(2)
FRAME4 = boundary_frame(EGG2, ComplexPoint(1, 0), 4)


def test_catalog_names():
    assert catalog_names() == ("COORD1", "INNER", "PRODUCT", "SPIRAL")
    with pytest.raises(UnknownFunction):
        catalog("NOPE")


def test_coord1_at_center():
    assert catalog("COORD1")(ComplexPoint(0, 0)) == 0


def test_inner_decay_on_real_axis():
    # exponent (2 - s)/(-s) = -199 at s = 0.01
    f = catalog("INNER")
    value = f(ComplexPoint(0.99, 0))
    assert abs(value) == pytest.approx(math.exp((2 - 0.01) / (-0.01)), rel=1e-12)
    assert abs(value) < 1e-80


def test_spiral_unit_modulus_and_log_phase():
    f = catalog("SPIRAL")
    for s in (0.1, 0.01, 1e-4):
        value = f(ComplexPoint(1.0 - s, 0))
        assert abs(value) == pytest.approx(1.0, rel=1e-12)
        assert value == pytest.approx(cmath.exp(1j * math.log(s)), rel=1e-12)


def _quasi_random_interior(domain, n, max_rho=0.0, seed=5):
    """Sobol points of the bidisc, rejected to rho < max_rho."""
    sampler = qmc.Sobol(d=4, scramble=True, seed=seed)
    out = []
    while len(out) < n:
        block = sampler.random(2048) * 2.0 - 1.0
        for x1, y1, x2, y2 in block:
            p = ComplexPoint(complex(x1, y1), complex(x2, y2))
            if domain.eval_rho(p) < max_rho:
                out.append(p)
                if len(out) == n:
                    break
    return out


@pytest.mark.parametrize("name", ["COORD1", "PRODUCT", "INNER", "SPIRAL"])
def test_boundedness_on_quasi_random_samples(name):
    f = catalog(name)
    points = _quasi_random_interior(EGG2, 10_000)
    assert max(abs(f(p)) for p in points) <= f.sup_norm


@pytest.mark.parametrize("name", ["COORD1", "PRODUCT", "INNER", "SPIRAL"])
def test_holomorphy_residuals(name):
    # stay a bit away from the boundary: the finite-difference error grows
    # like |f'''| h^2 and the catalog has boundary singularities
    f = catalog(name)
    for p in _quasi_random_interior(EGG2, 100, max_rho=-0.2, seed=17):
        assert holomorphy_residual(f, p) <= 1e-6


def test_inner_vanishes_along_restricted_curves():
    f = catalog("INNER")
    for name, c in restricted_family(4):
        values = eval_along(f, c, FRAME4, EGG2)
        tail = [abs(v) for _, v in values[-7:]]
        assert max(tail) <= 1e-8, name


def test_eval_along_examples():
    product = catalog("PRODUCT")
    normal = ExponentCurve(1.0)
    assert all(v == 0 for _, v in eval_along(product, normal, FRAME4, EGG2))
    coord = catalog("COORD1")
    values = dict(eval_along(coord, normal, FRAME4, EGG2, schedule=(0.9,)))
    assert values[0.9] == pytest.approx(0.9, abs=1e-15)


def test_eval_along_rejects_curve_leaving_domain():
    # tangential scale 2 with b = 1/4: |z2|^4 = 16 s exceeds 2s - s^2
    escaping = ExponentCurve(1.0, 1.0, 0.25, 2.0)
    with pytest.raises(PointLeftDomain):
        eval_along(catalog("COORD1"), escaping, FRAME4, EGG2)


def test_membership_checked_before_evaluation():
    # the escaping point really is outside
    p = ExponentCurve(1.0, 1.0, 0.25, 2.0).point_at(0.9, FRAME4)
    assert EGG2.contains(p) is Membership.OUTSIDE
