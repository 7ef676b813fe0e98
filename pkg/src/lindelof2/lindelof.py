"""Slice-disc machinery and end-to-end theorem verification.

For a curve Gamma with normal projection gamma, the complex line
lambda -> (1-lambda) gamma(t) + lambda Gamma(t) stays inside the domain on
a disc whose radius R(t) is controlled by a geometric constant k.  The
classical one-variable Schwarz bound on that disc,

    |f(Gamma(t)) - f(gamma(t))| <= 2 ||f|| / R(t),

forces the gap to vanish for special curves (1/R -> 0), which transfers a
limit along one restricted curve to every other restricted curve through
the one-variable non-tangential principle on the normal line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .curves import (
    DEFAULT_SCHEDULE,
    RATIO_TOL,
    STOLZ_ALPHA_GRID,
    TAIL_S_MAX,
    Capture,
    CurveClassification,
    ExponentCurve,
    SampledCurve,
    Verdict,
    ZetaCurve,
    classify,
    curve_samples,
    eventually_in_admissible,
    project_curve,
)
from .errors import BadScenario, InapplicableCurve, PointLeftDomain
from .geometry import BoundaryFrame, ComplexPoint, DomainModel, Membership, project_to_normal_line
from .holo import BoundedHolomorphicFunction, eval_along

DEGENERATE_TANGENTIAL = 1e-14
SLICE_MARGIN = 1e-3  # radii are sampled up to (1 - margin) * R
LIMIT_TOL = 1e-6
K_RELATIVE_TOL = 1e-3
K_MAX_BISECTIONS = 40


def slice_radius(k: float, m: int, normal_dist: float, tangential_dist: float) -> float:
    """R(t) = (k |zeta - gamma|)^(1/m) / |Gamma - gamma|."""
    if tangential_dist < DEGENERATE_TANGENTIAL:
        return math.inf
    if k <= 0.0:
        return 0.0
    return (k * normal_dist) ** (1.0 / m) / tangential_dist


def _lambda_grid(radius: float, n_angles: int, n_radii: int, margin: float = SLICE_MARGIN):
    radii = radius * (1.0 - margin) * np.arange(1, n_radii + 1) / n_radii
    angles = 2.0 * np.pi * np.arange(n_angles) / n_angles
    return np.outer(radii, np.exp(1j * angles)).ravel()


def _slice_points(gamma_t: ComplexPoint, big_gamma_t: ComplexPoint, lam: np.ndarray):
    d1 = big_gamma_t.z1 - gamma_t.z1
    d2 = big_gamma_t.z2 - gamma_t.z2
    return gamma_t.z1 + lam * d1, gamma_t.z2 + lam * d2


def slice_disc_inside(
    domain: DomainModel,
    gamma_t: ComplexPoint,
    big_gamma_t: ComplexPoint,
    radius: float,
    n_angles: int = 12,
    n_radii: int = 12,
    margin: float = SLICE_MARGIN,
) -> bool:
    """True iff every sampled point of the slice disc of the given radius
    (shrunk by the margin) is strictly inside the domain."""
    if math.isinf(radius):
        return domain.contains(gamma_t) is Membership.INSIDE
    lam = _lambda_grid(radius, n_angles, n_radii, margin)
    z1, z2 = _slice_points(gamma_t, big_gamma_t, lam)
    return bool(np.all(domain.inside_mask(z1, z2)))


def estimate_k_at(
    domain: DomainModel,
    frame: BoundaryFrame,
    gamma_t: ComplexPoint,
    big_gamma_t: ComplexPoint,
    m: int,
    lambda_grid_size: int = 12,
) -> float:
    """Largest k (bisection, 1e-3 relative) such that the whole sampled
    slice disc of radius R(k) stays inside the domain.

    Returns math.inf for a degenerate slice (|Gamma - gamma| ~ 0): the
    curve is purely normal and the disc constraint is vacuous.
    """
    tangential = (big_gamma_t - gamma_t).norm()
    if tangential < DEGENERATE_TANGENTIAL:
        return math.inf
    for label, p in (("gamma(t)", gamma_t), ("Gamma(t)", big_gamma_t)):
        if domain.contains(p) is not Membership.INSIDE:
            raise PointLeftDomain(None, p, f"{label} is not inside the domain")
    normal_dist = (frame.zeta - gamma_t).norm()

    def ok(k: float) -> bool:
        radius = slice_radius(k, m, normal_dist, tangential)
        return slice_disc_inside(
            domain, gamma_t, big_gamma_t, radius, lambda_grid_size, lambda_grid_size
        )

    k_lo, k_hi = 1.0, 2.0
    if ok(1.0):
        for _ in range(200):
            if not ok(k_hi):
                break
            k_lo = k_hi
            k_hi *= 2.0
        else:
            return math.inf  # domain looks unbounded at sampled resolution
    else:
        k_hi = 1.0
        k_lo = 0.5
        while not ok(k_lo):
            k_hi = k_lo
            k_lo *= 0.5
            if k_lo < 1e-15:
                return 0.0
    for _ in range(K_MAX_BISECTIONS):
        if k_hi - k_lo <= K_RELATIVE_TOL * k_lo:
            break
        mid = 0.5 * (k_lo + k_hi)
        if ok(mid):
            k_lo = mid
        else:
            k_hi = mid
    return k_lo


def estimate_k(
    domain: DomainModel,
    frame: BoundaryFrame,
    curve: ZetaCurve,
    t: float,
    lambda_grid_size: int = 12,
) -> float:
    if isinstance(curve, SampledCurve):
        idx = curve.ts.index(t)
        big_gamma_t = curve.points[idx]
    else:
        big_gamma_t = curve.point_at(t, frame)
    gamma_t = project_to_normal_line(big_gamma_t, frame)
    return estimate_k_at(domain, frame, gamma_t, big_gamma_t, frame.type_m, lambda_grid_size)


@dataclass(frozen=True)
class SliceGeometry:
    """Per-t record of the slice construction; R is always recomputable
    from (k, m, |zeta - gamma|, |Gamma - gamma|)."""

    t: float
    gamma_t: ComplexPoint
    big_gamma_t: ComplexPoint
    k: float
    radius: float
    zeta: ComplexPoint
    m: int

    @property
    def normal_dist(self) -> float:
        return (self.zeta - self.gamma_t).norm()

    @property
    def tangential_dist(self) -> float:
        return (self.big_gamma_t - self.gamma_t).norm()


def slice_geometry(
    domain: DomainModel,
    frame: BoundaryFrame,
    curve: ZetaCurve,
    t: float,
    k: float | None = None,
    lambda_grid_size: int = 12,
) -> SliceGeometry:
    if isinstance(curve, SampledCurve):
        big_gamma_t = curve.points[curve.ts.index(t)]
    else:
        big_gamma_t = curve.point_at(t, frame)
    gamma_t = project_to_normal_line(big_gamma_t, frame)
    m = frame.type_m
    if k is None:
        k = estimate_k_at(domain, frame, gamma_t, big_gamma_t, m, lambda_grid_size)
    radius = slice_radius(k, m, (frame.zeta - gamma_t).norm(), (big_gamma_t - gamma_t).norm())
    return SliceGeometry(
        t=t, gamma_t=gamma_t, big_gamma_t=big_gamma_t, k=k, radius=radius, zeta=frame.zeta, m=m
    )


@dataclass(frozen=True)
class SchwarzCheck:
    """One Schwarz-bound comparison: gap = |f(Gamma(t)) - f(gamma(t))|
    against 2 sup_norm / R(t).  Not applicable when R(t) <= 1 (the slice
    disc does not reach lambda = 1); a degenerate slice has constant slice
    function, so the gap is identically zero."""

    t: float
    gap: float
    bound: float | None
    radius: float
    applicable: bool
    passed: bool | None
    degenerate: bool = False


def schwarz_gap_check(
    f: BoundedHolomorphicFunction,
    domain: DomainModel,
    frame: BoundaryFrame,
    curve: ZetaCurve,
    t: float,
    k: float,
) -> SchwarzCheck:
    geom = slice_geometry(domain, frame, curve, t, k=k)
    for label, p in (("gamma(t)", geom.gamma_t), ("Gamma(t)", geom.big_gamma_t)):
        if domain.contains(p) is not Membership.INSIDE:
            raise PointLeftDomain(t, p, f"{label} left the domain (bad k or curve)")
    if geom.tangential_dist < DEGENERATE_TANGENTIAL:
        return SchwarzCheck(
            t=t, gap=0.0, bound=0.0, radius=math.inf, applicable=True, passed=True, degenerate=True
        )
    gap = abs(f(geom.big_gamma_t) - f(geom.gamma_t))
    if geom.radius <= 1.0:
        return SchwarzCheck(t=t, gap=gap, bound=None, radius=geom.radius, applicable=False, passed=None)
    bound = 2.0 * f.sup_norm / geom.radius
    return SchwarzCheck(
        t=t,
        gap=gap,
        bound=bound,
        radius=geom.radius,
        applicable=True,
        passed=gap <= bound * (1.0 + 1e-9),
    )


class LimitStatus(Enum):
    CONVERGED = "Converged"
    OSCILLATING = "Oscillating"
    DIVERGING = "Diverging"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class LimitEstimate:
    status: LimitStatus
    value: complex | None = None
    residual: float | None = None  # tail diameter for Converged
    amplitude: float | None = None  # tail diameter for Oscillating
    trace: tuple[tuple[float, complex], ...] = ()


def _diameter(values) -> float:
    values = list(values)
    return max(
        (abs(a - b) for i, a in enumerate(values) for b in values[i + 1 :]),
        default=0.0,
    )


def estimate_limit(
    f: BoundedHolomorphicFunction,
    curve: ZetaCurve,
    frame: BoundaryFrame,
    domain: DomainModel,
    schedule=None,
    limit_tol: float = LIMIT_TOL,
) -> LimitEstimate:
    """Tail-diameter verdict on f along the curve.

    Converged needs the last-quarter diameter within limit_tol; a large,
    non-shrinking diameter of bounded values is Oscillating.  No
    extrapolation is attempted: a manufactured limit would defeat the
    counterexample scenarios.
    """
    trace = tuple(eval_along(f, curve, frame, domain, schedule))
    values = [v for _, v in trace]
    if any(abs(v) > f.sup_norm * (1.0 + 1e-6) for v in values):
        return LimitEstimate(status=LimitStatus.DIVERGING, trace=trace)
    quarter = max(2, len(values) // 4)
    tail_diam = _diameter(values[-quarter:])
    prev = values[-2 * quarter : -quarter]
    prev_diam = _diameter(prev) if len(prev) >= 2 else tail_diam
    if tail_diam <= limit_tol:
        return LimitEstimate(
            status=LimitStatus.CONVERGED, value=values[-1], residual=tail_diam, trace=trace
        )
    if tail_diam > 100.0 * limit_tol and tail_diam > 0.5 * prev_diam:
        return LimitEstimate(status=LimitStatus.OSCILLATING, amplitude=tail_diam, trace=trace)
    return LimitEstimate(status=LimitStatus.INCONCLUSIVE, residual=tail_diam, trace=trace)


@dataclass(frozen=True)
class OneVarCheck:
    passed: bool
    base_estimate: LimitEstimate
    other_estimate: LimitEstimate


def _tangential_size(curve: ZetaCurve, frame: BoundaryFrame, schedule) -> float:
    if isinstance(curve, ExponentCurve):
        return curve.tangential_scale
    _, points = curve_samples(curve, frame, schedule)
    return max(abs(frame.tangential_coordinate(p)) for p in points)


def one_var_lindelof_check(
    f: BoundedHolomorphicFunction,
    frame: BoundaryFrame,
    domain: DomainModel,
    gamma0: ZetaCurve,
    gamma: ZetaCurve,
    schedule=None,
    limit_tol: float = LIMIT_TOL,
) -> OneVarCheck:
    """One-variable transfer on the normal line: two non-tangential
    projection curves must produce the same limit."""
    for label, c in (("gamma0", gamma0), ("gamma", gamma)):
        if _tangential_size(c, frame, schedule) > 1e-12:
            raise InapplicableCurve(f"{label} has a nonzero tangential component")
        verdict = classify(c, frame, schedule).nontangential_projection
        if verdict is not Verdict.YES:
            raise InapplicableCurve(f"{label} is not non-tangential (verdict {verdict.value})")
    base = estimate_limit(f, gamma0, frame, domain, schedule, limit_tol)
    other = estimate_limit(f, gamma, frame, domain, schedule, limit_tol)
    passed = (
        base.status is LimitStatus.CONVERGED
        and other.status is LimitStatus.CONVERGED
        and abs(base.value - other.value) <= 10.0 * limit_tol
    )
    return OneVarCheck(passed=passed, base_estimate=base, other_estimate=other)


@dataclass(frozen=True)
class Scenario:
    """Everything a theorem run needs: domain, frame (with type), the
    function under test, the designated base curve, and the test family."""

    scenario_id: str
    domain: DomainModel
    frame: BoundaryFrame
    function: BoundedHolomorphicFunction
    base_name: str
    base: ZetaCurve
    test_curves: tuple[tuple[str, ZetaCurve], ...] = ()
    schedule: tuple[float, ...] = DEFAULT_SCHEDULE
    limit_tol: float = LIMIT_TOL
    ratio_tol: float = RATIO_TOL
    alpha_grid: tuple[float, ...] = STOLZ_ALPHA_GRID
    lambda_grid_size: int = 12


@dataclass(frozen=True)
class CurveRecord:
    """Everything measured for one curve of a scenario."""

    name: str
    role: str  # "base" | "test"
    classification: CurveClassification
    capture: Capture | None
    geometries: tuple[SliceGeometry, ...]
    schwarz: tuple[SchwarzCheck, ...]
    limit: LimitEstimate
    projected_limit: LimitEstimate | None
    one_var: OneVarCheck | None
    mandatory: bool
    limit_agrees: bool | None
    k_tail_inf: float | None

    @property
    def schwarz_all_passed(self) -> bool:
        return all(c.passed for c in self.schwarz if c.applicable)

    def gap_tail_max(self) -> float:
        gaps = [c.gap for c in self.schwarz]
        quarter = max(1, len(gaps) // 4)
        return max(gaps[-quarter:], default=0.0)


@dataclass(frozen=True)
class VerificationReport:
    scenario_id: str
    verdict: str  # "Pass" | "Fail" | "BadScenario"
    reason: str
    limit: complex | None
    type_m: int
    curves: tuple[CurveRecord, ...]
    k_scenario: float | None
    k_decay_warning: bool

    @property
    def passed(self) -> bool:
        return self.verdict == "Pass"


def _analyze_curve(scenario: Scenario, name: str, role: str, curve: ZetaCurve) -> dict:
    frame, domain = scenario.frame, scenario.domain
    classification = classify(
        curve, frame, scenario.schedule, scenario.ratio_tol, scenario.alpha_grid
    )
    capture = eventually_in_admissible(curve, frame, scenario.alpha_grid, scenario.schedule)
    geometries = []
    checks = []
    for t in scenario.schedule:
        geom = slice_geometry(
            domain, frame, curve, t, k=None, lambda_grid_size=scenario.lambda_grid_size
        )
        geometries.append(geom)
        checks.append(schwarz_gap_check(scenario.function, domain, frame, curve, t, geom.k))
    limit = estimate_limit(
        scenario.function, curve, frame, domain, scenario.schedule, scenario.limit_tol
    )
    tail_ks = [g.k for g in geometries if 1.0 - g.t <= TAIL_S_MAX]
    k_tail_inf = min(tail_ks, default=None)
    return dict(
        name=name,
        role=role,
        classification=classification,
        capture=capture,
        geometries=tuple(geometries),
        schwarz=tuple(checks),
        limit=limit,
        k_tail_inf=k_tail_inf,
    )


def _bad_scenario_report(scenario: Scenario, reason: str, record: CurveRecord) -> VerificationReport:
    return VerificationReport(
        scenario_id=scenario.scenario_id,
        verdict="BadScenario",
        reason=reason,
        limit=None,
        type_m=scenario.frame.type_m,
        curves=(record,),
        k_scenario=record.k_tail_inf,
        k_decay_warning=_k_decay_warning([record]),
    )


def _k_decay_warning(records) -> bool:
    ks = [
        g.k
        for rec in records
        for g in rec.geometries
        if 1.0 - g.t <= TAIL_S_MAX and math.isfinite(g.k)
    ]
    return bool(ks) and min(ks) < 0.2 * max(ks)


def verify_theorem(scenario: Scenario, raise_on_bad: bool = True) -> VerificationReport:
    """Run the full pipeline: classify every curve, establish the limit L
    along the base curve, check the Schwarz gaps, transfer L through the
    normal line, and compare every restricted test curve's limit to L.

    Raises BadScenario (with the partial report attached) when the base
    curve is not restricted or the function has no limit along it.
    """
    frame = scenario.frame
    base_cls = classify(
        scenario.base, frame, scenario.schedule, scenario.ratio_tol, scenario.alpha_grid
    )
    if base_cls.restricted is not Verdict.YES:
        # reject before any slice analysis: a non-restricted base may not
        # even stay inside the domain
        reason = (
            f"base curve is not restricted (special={base_cls.special.value}, "
            f"nontangential={base_cls.nontangential_projection.value})"
        )
        record = CurveRecord(
            name=scenario.base_name,
            role="base",
            classification=base_cls,
            capture=eventually_in_admissible(
                scenario.base, frame, scenario.alpha_grid, scenario.schedule
            ),
            geometries=(),
            schwarz=(),
            limit=LimitEstimate(status=LimitStatus.INCONCLUSIVE),
            projected_limit=None,
            one_var=None,
            mandatory=True,
            limit_agrees=None,
            k_tail_inf=None,
        )
        report = _bad_scenario_report(scenario, reason, record)
        if raise_on_bad:
            raise BadScenario(reason, report=report)
        return report

    base_info = _analyze_curve(scenario, scenario.base_name, "base", scenario.base)
    gamma0 = project_curve(scenario.base, frame)
    if base_info["limit"].status is not LimitStatus.CONVERGED:
        reason = (
            f"function does not converge along the base curve "
            f"(status {base_info['limit'].status.value})"
        )
        record = CurveRecord(
            **base_info, projected_limit=None, one_var=None, mandatory=True, limit_agrees=None
        )
        report = _bad_scenario_report(scenario, reason, record)
        if raise_on_bad:
            raise BadScenario(reason, report=report)
        return report

    limit_value = base_info["limit"].value
    tol = 10.0 * scenario.limit_tol
    projected_base_limit = estimate_limit(
        scenario.function, gamma0, frame, scenario.domain, scenario.schedule, scenario.limit_tol
    )
    base_agrees = (
        projected_base_limit.status is LimitStatus.CONVERGED
        and abs(projected_base_limit.value - limit_value) <= tol
    )
    base_record = CurveRecord(
        **base_info,
        projected_limit=projected_base_limit,
        one_var=None,
        mandatory=True,
        limit_agrees=base_agrees,
    )
    records = [base_record]
    for name, curve in scenario.test_curves:
        info = _analyze_curve(scenario, name, "test", curve)
        mandatory = info["classification"].restricted is Verdict.YES
        one_var = None
        limit_agrees = None
        if mandatory:
            gamma = project_curve(curve, frame)
            one_var = one_var_lindelof_check(
                scenario.function,
                frame,
                scenario.domain,
                gamma0,
                gamma,
                scenario.schedule,
                scenario.limit_tol,
            )
            limit_agrees = (
                info["limit"].status is LimitStatus.CONVERGED
                and abs(info["limit"].value - limit_value) <= tol
            )
        records.append(
            CurveRecord(
                **info,
                projected_limit=None,
                one_var=one_var,
                mandatory=mandatory,
                limit_agrees=limit_agrees,
            )
        )

    mandatory_ok = base_record.schwarz_all_passed and base_agrees
    for rec in records[1:]:
        if not rec.mandatory:
            continue
        mandatory_ok = (
            mandatory_ok
            and rec.schwarz_all_passed
            and rec.one_var is not None
            and rec.one_var.passed
            and bool(rec.limit_agrees)
        )
    finite_ks = [rec.k_tail_inf for rec in records if rec.k_tail_inf is not None]
    return VerificationReport(
        scenario_id=scenario.scenario_id,
        verdict="Pass" if mandatory_ok else "Fail",
        reason="" if mandatory_ok else "a mandatory check failed",
        limit=limit_value,
        type_m=frame.type_m,
        curves=tuple(records),
        k_scenario=min(finite_ks, default=None),
        k_decay_warning=_k_decay_warning(records),
    )
