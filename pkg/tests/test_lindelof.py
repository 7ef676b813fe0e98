import math

import pytest

from lindelof2 import (
    BadScenario,
    ComplexPoint,
    ExponentCurve,
    InapplicableCurve,
    LimitStatus,
    SampledCurve,
    Scenario,
    Verdict,
    boundary_frame,
    catalog,
    classify,
    egg_domain,
    estimate_k,
    estimate_limit,
    one_var_lindelof_check,
    schwarz_gap_check,
    slice_disc_inside,
    slice_geometry,
    slice_radius,
    verify_theorem,
)
from lindelof2.curves import DEFAULT_SCHEDULE, geometric_schedule
from lindelof2.families import (
    fast_restricted_family,
    radial_curve,
    restricted_family,
    tangential_base_curve,
)
from lindelof2.holo import BoundedHolomorphicFunction

EGG1 = egg_domain(1)
EGG2 = egg_domain(2)
FRAME2 = boundary_frame(EGG1, ComplexPoint(1, 0), 2)
FRAME4 = boundary_frame(EGG2, ComplexPoint(1, 0), 4)


def exact_egg_k(curve, frame, t):
    """Closed-form largest valid k for eggs at (1, 0): membership of the
    slice line (G1, lambda G2) reduces to |lambda G2|^(2m) < 1 - |G1|^2, so
    k_max = (1 - |G1|^2) / |1 - G1|."""
    g1 = curve.point_at(t, frame).z1
    return (1.0 - abs(g1) ** 2) / abs(1.0 - g1)


def test_slice_radius_values():
    assert slice_radius(1.0, 2, 1e-4, 1e-3) == pytest.approx(10.0, rel=1e-12)
    assert slice_radius(16.0, 4, 1e-4, 0.05) == pytest.approx(4.0, rel=1e-12)
    assert slice_radius(1.0, 2, 1e-4, 0.0) == math.inf


def test_estimate_k_on_ball_matches_membership_algebra():
    curve = ExponentCurve(1.0, 1.0, 0.5, 1.0)
    for s in (1e-3, 1e-4, 1e-5):
        t = 1.0 - s
        k = estimate_k(EGG1, FRAME2, curve, t)
        assert k == pytest.approx(exact_egg_k(curve, FRAME2, t), rel=0.05)


def test_estimate_k_on_egg2_bracket_and_stability():
    curve = ExponentCurve(1.0, 1.0, 0.5, 1.0)
    ks = [estimate_k(EGG2, FRAME4, curve, 1.0 - s) for s in (1e-3, 1e-4, 1e-5)]
    for k in ks:
        assert 0.1 <= k <= 10.0
        assert k == pytest.approx(ks[0], rel=0.2)


def test_estimate_k_degenerate_slice_sentinel():
    assert estimate_k(EGG2, FRAME4, radial_curve(), 0.999) == math.inf


def test_slice_geometry_identity():
    # R recomputes exactly from the stored fields
    curve = ExponentCurve(1.0, 1.0, 0.5, 1.0)
    for t in DEFAULT_SCHEDULE[::5]:
        geom = slice_geometry(EGG2, FRAME4, curve, t)
        recomputed = (geom.k * geom.normal_dist) ** (1.0 / geom.m) / geom.tangential_dist
        assert geom.radius == pytest.approx(recomputed, rel=1e-12)


def test_slice_disc_membership_margin():
    curve = ExponentCurve(1.0, 1.0, 0.5, 1.0)
    for t in DEFAULT_SCHEDULE:
        geom = slice_geometry(EGG2, FRAME4, curve, t)
        assert slice_disc_inside(
            EGG2, geom.gamma_t, geom.big_gamma_t, geom.radius, n_angles=16, n_radii=16
        )


def test_schwarz_constant_function_trivial():
    const = BoundedHolomorphicFunction(
        name="CONST", sup_norm=0.5, expected_behavior="limit", expected_limit=0.5, _fn=lambda a, b: 0.5
    )
    curve = ExponentCurve(1.0, 1.0, 0.5, 1.0)
    t = 1.0 - 1e-4
    check = schwarz_gap_check(const, EGG2, FRAME4, curve, t, k=2.0)
    assert check.applicable and check.passed and check.gap == 0.0


def test_schwarz_degenerate_on_purely_normal_curve():
    check = schwarz_gap_check(catalog("INNER"), EGG2, FRAME4, radial_curve(), 0.99, k=math.inf)
    assert check.degenerate and check.passed and check.gap == 0.0


def test_schwarz_not_applicable_below_unit_radius():
    # a small k forces R <= 1: the disc no longer reaches lambda = 1
    curve = ExponentCurve(1.0, 1.0, 0.5, 1.0)
    check = schwarz_gap_check(catalog("COORD1"), EGG2, FRAME4, curve, 1.0 - 1e-2, k=1e-8)
    assert not check.applicable and check.passed is None and check.radius <= 1.0


def test_schwarz_gap_vanishes_for_special_curves_of_product():
    f = catalog("PRODUCT")
    for name, curve in restricted_family(4):
        gaps = []
        for t in DEFAULT_SCHEDULE:
            k = estimate_k(EGG2, FRAME4, curve, t)
            check = schwarz_gap_check(f, EGG2, FRAME4, curve, t, k)
            if check.applicable:
                assert check.passed, (name, t)
            gaps.append(check.gap)
        assert gaps[-1] < 1e-3, name
        assert gaps[-1] < gaps[0], name


def test_gap_vanishes_even_for_special_but_tangential_curve():
    # tangential normal law s + i sqrt(s), with a genuine tangential part
    # s^(3/8): special (ratio s^1.5 / ~sqrt(s) -> 0) but not restricted;
    # the first proof step only needs special-ness.
    ts = DEFAULT_SCHEDULE
    points = tuple(
        FRAME4.zeta
        - FRAME4.nu.scale(complex(s, math.sqrt(s)))
        + FRAME4.tau.scale(s**0.375)
        for s in (1.0 - t for t in ts)
    )
    curve = SampledCurve(ts, points)
    cls = classify(curve, FRAME4)
    assert cls.special is Verdict.YES and cls.restricted is Verdict.NO
    f = catalog("PRODUCT")
    gaps = []
    for t in ts[-8:]:
        k = estimate_k(EGG2, FRAME4, curve, t)
        check = schwarz_gap_check(f, EGG2, FRAME4, curve, t, k)
        if check.applicable:
            assert check.passed
        gaps.append(check.gap)
    assert gaps[-1] < 1e-2 and gaps[-1] < gaps[0]


def test_inverse_radius_trends():
    # special curves: 1/R decreasing with small tail; boundary family
    # m*b = a: 1/R approaches a positive constant
    fast = ExponentCurve(1.0, 1.0, 0.5, 1.0)
    inv = []
    for t in DEFAULT_SCHEDULE:
        geom = slice_geometry(EGG2, FRAME4, fast, t)
        inv.append(1.0 / geom.radius)
    assert all(a >= b for a, b in zip(inv[-8:], inv[-7:]))
    assert inv[-1] < 1e-2
    boundary = ExponentCurve(1.0, 1.0, 0.25, 1.0)
    inv_b = []
    for t in DEFAULT_SCHEDULE[-8:]:
        geom = slice_geometry(EGG2, FRAME4, boundary, t)
        inv_b.append(1.0 / geom.radius)
    assert min(inv_b) > 0.1


def test_estimate_limit_coord1_converges_to_one():
    est = estimate_limit(catalog("COORD1"), radial_curve(), FRAME4, EGG2)
    assert est.status is LimitStatus.CONVERGED
    assert est.value == pytest.approx(1.0, abs=1e-5)


def test_estimate_limit_product_on_restricted_curve():
    curve = ExponentCurve(1.0, 1.0, 0.75, 1.0)
    est = estimate_limit(
        catalog("PRODUCT"), curve, FRAME4, EGG2, schedule=geometric_schedule(4, 44, 4)
    )
    assert est.status is LimitStatus.CONVERGED
    assert abs(est.value) < 1e-5


def test_estimate_limit_spiral_oscillates():
    est = estimate_limit(catalog("SPIRAL"), radial_curve(), FRAME4, EGG2)
    assert est.status is LimitStatus.OSCILLATING
    assert est.amplitude > 1e-4


def test_estimate_limit_diverging_flags_bad_bound(strict_function_bounds):
    import lindelof2.holo

    lindelof2.holo.STRICT_BOUNDS = False  # let the estimator see the breach
    lying = BoundedHolomorphicFunction(
        name="LIAR", sup_norm=0.1, expected_behavior="unknown", _fn=lambda z1, z2: z1
    )
    est = estimate_limit(lying, radial_curve(), FRAME4, EGG2)
    assert est.status is LimitStatus.DIVERGING


def test_one_var_check_inner_radial_vs_cone():
    # gamma in a cone at angle pi/6: normal coordinate s * e^{i pi/6}
    ts = DEFAULT_SCHEDULE
    angle = complex(math.cos(math.pi / 6), math.sin(math.pi / 6))
    cone = SampledCurve(
        ts, tuple(FRAME4.zeta - FRAME4.nu.scale((1.0 - t) * angle) for t in ts)
    )
    result = one_var_lindelof_check(catalog("INNER"), FRAME4, EGG2, radial_curve(), cone)
    assert result.passed
    assert abs(result.base_estimate.value) < 1e-8
    assert abs(result.other_estimate.value) < 1e-8


def test_one_var_check_coord1_passes_with_limit_one():
    slower = ExponentCurve(1.0, 0.5, 1.0, 0.0)
    result = one_var_lindelof_check(catalog("COORD1"), FRAME4, EGG2, radial_curve(), slower)
    assert result.passed
    assert result.base_estimate.value == pytest.approx(1.0, abs=1e-5)


def test_one_var_check_spiral_fails():
    slower = ExponentCurve(1.0, 0.5, 1.0, 0.0)
    result = one_var_lindelof_check(catalog("SPIRAL"), FRAME4, EGG2, radial_curve(), slower)
    assert not result.passed
    assert result.base_estimate.status is LimitStatus.OSCILLATING
    assert result.other_estimate.status is LimitStatus.OSCILLATING


def test_one_var_check_rejects_tangential_or_offset_curves():
    with pytest.raises(InapplicableCurve):
        one_var_lindelof_check(
            catalog("INNER"), FRAME4, EGG2, radial_curve(), ExponentCurve(1.0, 1.0, 0.5, 1.0)
        )
    tangential = tangential_base_curve(FRAME4, DEFAULT_SCHEDULE)
    with pytest.raises(InapplicableCurve):
        one_var_lindelof_check(catalog("INNER"), FRAME4, EGG2, radial_curve(), tangential)


def _scenario(function_id, base, tests, schedule=DEFAULT_SCHEDULE, sid="test"):
    return Scenario(
        scenario_id=sid,
        domain=EGG2,
        frame=FRAME4,
        function=catalog(function_id),
        base_name="G0",
        base=base,
        test_curves=tuple(tests),
        schedule=schedule,
    )


def test_verify_theorem_inner_passes_with_zero_limit():
    report = verify_theorem(_scenario("INNER", radial_curve(), restricted_family(4)))
    assert report.verdict == "Pass"
    assert abs(report.limit) <= 1e-5
    for rec in report.curves:
        assert rec.schwarz_all_passed
        if rec.mandatory:
            assert rec.limit.status is LimitStatus.CONVERGED
            assert abs(rec.limit.value) <= 1e-5


def test_verify_theorem_coord1_passes_with_limit_one():
    report = verify_theorem(_scenario("COORD1", radial_curve(), restricted_family(4)))
    assert report.verdict == "Pass"
    assert report.limit == pytest.approx(1.0, abs=1e-5)


def test_verify_theorem_rejects_nonrestricted_base():
    bad = ExponentCurve(1.0, 1.0, 0.25, 1.0)  # m*b = a: not special
    with pytest.raises(BadScenario, match="not restricted"):
        verify_theorem(_scenario("PRODUCT", bad, restricted_family(4)))


def test_verify_theorem_rejects_out_of_domain_base():
    # a base with huge tangential scale leaves the egg entirely; it is
    # rejected on classification, before any evaluation could fail
    escaped = ExponentCurve(1.0, 1.0, 0.25, 2.0)
    with pytest.raises(BadScenario, match="not restricted"):
        verify_theorem(_scenario("PRODUCT", escaped, ()))


def test_verify_theorem_rejects_oscillating_base():
    with pytest.raises(BadScenario, match="does not converge"):
        verify_theorem(_scenario("SPIRAL", radial_curve(), restricted_family(4)))


def test_verify_theorem_report_attached_to_rejection():
    try:
        verify_theorem(_scenario("SPIRAL", radial_curve(), ()))
    except BadScenario as exc:
        assert exc.report is not None and exc.report.verdict == "BadScenario"
    else:
        pytest.fail("expected BadScenario")


def test_verify_theorem_nonrestricted_test_curves_are_informational():
    # the boundary family m*b = a stays inside the egg but is not special
    boundary_curve = ExponentCurve(1.0, 1.0, 0.25, 1.0)
    tests = list(restricted_family(4))[:2] + [("boundary", boundary_curve)]
    report = verify_theorem(_scenario("INNER", radial_curve(), tests))
    assert report.verdict == "Pass"
    informational = [rec for rec in report.curves if not rec.mandatory]
    assert [rec.name for rec in informational] == ["boundary"]


def test_verify_theorem_product_fast_family():
    report = verify_theorem(
        _scenario(
            "PRODUCT", radial_curve(), fast_restricted_family(4), geometric_schedule(4, 44, 4)
        )
    )
    assert report.verdict == "Pass"
    assert abs(report.limit) <= 1e-5
    assert all(rec.limit_agrees for rec in report.curves if rec.mandatory)
