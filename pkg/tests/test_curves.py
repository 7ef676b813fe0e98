import math

import pytest

from lindelof2 import (
    AdmissibleRegion,
    ComplexPoint,
    ExponentCurve,
    PhaseLaw,
    SampledCurve,
    TooFewSamples,
    Verdict,
    boundary_frame,
    classify,
    egg_domain,
    eventually_in_admissible,
    geometric_schedule,
    in_admissible,
    project_curve,
)
from lindelof2.curves import DEFAULT_SCHEDULE, STOLZ_ALPHA_GRID, curve_samples, to_sampled
from lindelof2.families import (
    nonspecial_family,
    radial_curve,
    restricted_family,
    tangential_base_curve,
)

EGG2 = egg_domain(2)
FRAME4 = boundary_frame(EGG2, ComplexPoint(1, 0), 4)
DEEP = geometric_schedule(4, 56, 4)


def curve(b, ct=1.0, a=1.0, cn=1.0, omega=0.0):
    return ExponentCurve(a, cn, b, ct, PhaseLaw(0.0, omega))


# -- exact exponent rule -------------------------------------------------------


@pytest.mark.parametrize(
    "b,special",
    [(0.5, Verdict.YES), (0.25, Verdict.NO), (0.375, Verdict.YES)],
)
def test_exact_special_rule_m4(b, special):
    cls = classify(curve(b), FRAME4)
    assert cls.special is special
    assert cls.nontangential_projection is Verdict.YES
    assert cls.restricted is special


def test_purely_normal_curve_is_special():
    cls = classify(radial_curve(), FRAME4)
    assert cls.special is Verdict.YES and cls.restricted is Verdict.YES


def test_restricted_equals_special_and_nontangential():
    cases = [curve(b, ct) for b in (0.125, 0.25, 0.375, 0.5, 1.0) for ct in (0.0, 0.5, 2.0)]
    cases.append(tangential_base_curve(FRAME4, DEFAULT_SCHEDULE))
    for c in cases:
        cls = classify(c, FRAME4)
        expected = (
            Verdict.YES
            if (cls.special is Verdict.YES and cls.nontangential_projection is Verdict.YES)
            else (
                Verdict.NO
                if Verdict.NO in (cls.special, cls.nontangential_projection)
                else Verdict.INCONCLUSIVE
            )
        )
        assert cls.restricted is expected


# -- projections ---------------------------------------------------------------


def test_project_exponent_curve_drops_tangential_part():
    proj = project_curve(curve(0.5), FRAME4)
    assert isinstance(proj, ExponentCurve) and proj.tangential_scale == 0.0
    assert proj.normal_exponent == 1.0 and proj.normal_scale == 1.0


def test_project_purely_normal_is_identity():
    c = radial_curve()
    assert project_curve(c, FRAME4) == c


def test_project_sampled_curve_pointwise():
    sc = to_sampled(curve(0.5), FRAME4)
    proj = project_curve(sc, FRAME4)
    assert isinstance(proj, SampledCurve)
    for p in proj.points:
        assert abs(FRAME4.tangential_coordinate(p)) < 1e-14


# -- numeric classifier on sampled curves --------------------------------------


def test_numeric_agrees_on_clear_cases():
    yes = classify(to_sampled(curve(0.5), FRAME4, DEEP), FRAME4)
    assert yes.special is Verdict.YES and yes.restricted is Verdict.YES
    no = classify(to_sampled(curve(0.125), FRAME4, DEEP), FRAME4)
    assert no.special is Verdict.NO
    boundary = classify(to_sampled(curve(0.25), FRAME4, DEEP), FRAME4)
    assert boundary.special is Verdict.INCONCLUSIVE  # m*b = a: undecidable numerically


def test_tangential_base_curve_classification():
    cls = classify(tangential_base_curve(FRAME4, DEFAULT_SCHEDULE), FRAME4)
    assert cls.special is Verdict.YES
    assert cls.nontangential_projection is Verdict.NO
    assert cls.restricted is Verdict.NO


def test_too_few_samples():
    ts = tuple(1.0 - 10.0 ** (-k) for k in range(1, 6))
    sc = SampledCurve(ts, tuple(ComplexPoint(t, 0) for t in ts))
    with pytest.raises(TooFewSamples):
        classify(sc, FRAME4)


def test_reparametrization_invariance():
    # relabel t -> sqrt(t) (i.e. the curve precomposed with t -> t^2)
    for b in (0.5, 0.75, 0.125):
        sc = to_sampled(curve(b), FRAME4, DEEP)
        relabeled = SampledCurve(tuple(math.sqrt(t) for t in sc.ts), sc.points)
        before = classify(sc, FRAME4)
        after = classify(relabeled, FRAME4)
        assert before.special is after.special
        assert before.nontangential_projection is after.nontangential_projection
        assert before.restricted is after.restricted


def test_phase_rescaling_invariance():
    for omega in (0.0, 1.0):
        base = classify(curve(0.5, omega=omega), FRAME4)
        for theta0 in (0.9, 2.3, -1.1):
            shifted = ExponentCurve(1.0, 1.0, 0.5, 1.0, PhaseLaw(theta0, omega))
            cls = classify(shifted, FRAME4)
            assert cls.special is base.special
            assert cls.restricted is base.restricted
            numeric = classify(to_sampled(shifted, FRAME4, DEEP), FRAME4)
            assert numeric.special is base.special


def test_measured_ratio_trend_matches_closed_form():
    cls = classify(curve(0.5), FRAME4)
    for t, ratio in cls.measured_ratio_trend:
        s = 1.0 - t
        assert ratio == pytest.approx(s**2.0 / s, rel=1e-9)  # (s^b)^m / s = s


# -- admissible regions ---------------------------------------------------------


def test_in_admissible_examples():
    region = AdmissibleRegion(FRAME4, alpha=2.0, m=4)
    s = 1e-4
    inward = FRAME4.zeta - FRAME4.nu.scale(s)
    assert in_admissible(inward, region)
    # tangential offset (2 alpha s)^(1/m) at depth s fails the power test
    offset = (2.0 * region.alpha * s) ** 0.25
    p = FRAME4.zeta - FRAME4.nu.scale(s) + FRAME4.tau.scale(offset)
    assert not in_admissible(p, region)
    # normal coordinate outside the Stolz cone (Im = 2 alpha Re)
    p = FRAME4.zeta - FRAME4.nu.scale(complex(s, 2.0 * region.alpha * s))
    assert not in_admissible(p, region)


def test_region_contains_inward_normal_segment():
    region = AdmissibleRegion(FRAME4, alpha=1.25, m=4)
    for s in (1e-1, 1e-3, 1e-6, 1e-9):
        assert in_admissible(FRAME4.zeta - FRAME4.nu.scale(s), region)


def test_capture_of_restricted_curve():
    cap = eventually_in_admissible(curve(0.5), FRAME4)
    assert cap is not None and cap.alpha <= 4.0
    # ratio s^(m b - a) = s < alpha everywhere on the schedule: smallest grid wins
    assert cap.alpha == 1.25


def test_nonspecial_curve_never_captured():
    assert eventually_in_admissible(curve(0.25, ct=2.0), FRAME4) is None


def test_purely_normal_captured_at_smallest_alpha():
    cap = eventually_in_admissible(radial_curve(), FRAME4)
    assert cap is not None and cap.alpha == min(STOLZ_ALPHA_GRID)


@pytest.mark.parametrize("m_egg,m", [(1, 2), (2, 4), (3, 6)])
def test_lemma1_families(m_egg, m):
    frame = boundary_frame(egg_domain(m_egg), ComplexPoint(1, 0), m)
    for name, c in restricted_family(m):
        assert classify(c, frame).restricted is Verdict.YES, name
        assert eventually_in_admissible(c, frame) is not None, name
    for name, c in nonspecial_family(m):
        assert classify(c, frame).special is Verdict.NO, name
        assert eventually_in_admissible(c, frame) is None, name


def test_curve_samples_default_schedule():
    ts, points = curve_samples(radial_curve(), FRAME4)
    assert ts == DEFAULT_SCHEDULE
    assert all(abs(p.z2) == 0 for p in points)
    gaps = [(FRAME4.zeta - p).norm() for p in points]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))  # approaches zeta
