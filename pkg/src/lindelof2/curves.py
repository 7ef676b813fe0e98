"""Curves approaching a boundary point, their normal-line projections, and
the special / restricted classification.

Two curve forms are supported: a closed-form exponent family

    Gamma(t) = zeta - c_n s^a nu + c_t s^b e^{i theta(s)} tau,   s = 1 - t,

classified by exact exponent arithmetic, and generic sampled tables
classified numerically from the measured ratio trend.  Verdicts are
ternary: o(.) cannot be decided from finitely many samples, so the numeric
path may return Inconclusive.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import TooFewSamples
from .geometry import BoundaryFrame, ComplexPoint, hermitian_inner, project_to_normal_line

RATIO_TOL = 1e-3
TAIL_S_MAX = 1e-3
MIN_TAIL_SAMPLES = 8
MIN_CAPTURE_SAMPLES = 4
SLOPE_EPS = 0.01
STOLZ_ALPHA_GRID = (1.25, 2.0, 4.0, 8.0)


def geometric_schedule(k_start: int = 4, k_stop: int = 32, per_decade: int = 4) -> tuple[float, ...]:
    """t_k = 1 - 10^(-k/per_decade): geometric approach in s = 1 - t,
    resolving power laws evenly in log scale."""
    return tuple(1.0 - 10.0 ** (-k / per_decade) for k in range(k_start, k_stop + 1))


DEFAULT_SCHEDULE = geometric_schedule()


class Verdict(Enum):
    YES = "Yes"
    NO = "No"
    INCONCLUSIVE = "Inconclusive"


def _both(first: Verdict, second: Verdict) -> Verdict:
    if Verdict.NO in (first, second):
        return Verdict.NO
    if first is Verdict.YES and second is Verdict.YES:
        return Verdict.YES
    return Verdict.INCONCLUSIVE


@dataclass(frozen=True)
class PhaseLaw:
    """Tangential phase theta(s) = theta0 + omega * ln(s): constant when
    omega = 0, a logarithmic spiral otherwise."""

    theta0: float = 0.0
    omega: float = 0.0

    def angle(self, s: float) -> float:
        return self.theta0 + (self.omega * math.log(s) if self.omega else 0.0)


@dataclass(frozen=True)
class ExponentCurve:
    """Closed-form curve toward the frame's boundary point."""

    normal_exponent: float  # a > 0
    normal_scale: float = 1.0  # c_n > 0
    tangential_exponent: float = 1.0  # b > 0
    tangential_scale: float = 0.0  # c_t >= 0
    phase: PhaseLaw = PhaseLaw()
    t_min: float = 0.0

    def __post_init__(self):
        if self.normal_exponent <= 0 or self.normal_scale <= 0:
            raise ValueError("normal exponent and scale must be positive")
        if self.tangential_exponent <= 0 or self.tangential_scale < 0:
            raise ValueError("tangential exponent must be positive, scale non-negative")

    def point_at(self, t: float, frame: BoundaryFrame) -> ComplexPoint:
        s = 1.0 - t
        p = frame.zeta - frame.nu.scale(self.normal_scale * s**self.normal_exponent)
        if self.tangential_scale:
            tangential = (
                self.tangential_scale
                * s**self.tangential_exponent
                * complex(math.cos(self.phase.angle(s)), math.sin(self.phase.angle(s)))
            )
            p = p + frame.tau.scale(tangential)
        return p


@dataclass(frozen=True)
class SampledCurve:
    """Dense table t_k -> Gamma(t_k), strictly increasing in t."""

    ts: tuple[float, ...]
    points: tuple[ComplexPoint, ...]
    t_min: float = 0.0

    def __post_init__(self):
        if len(self.ts) != len(self.points) or not self.ts:
            raise ValueError("sample table must be non-empty with matching lengths")
        for prev, cur in zip(self.ts, self.ts[1:]):
            if not prev < cur:
                raise ValueError("sample parameters must be strictly increasing")
        if self.ts[0] < 0.0 or self.ts[-1] >= 1.0:
            raise ValueError("sample parameters must lie in [0, 1)")


ZetaCurve = ExponentCurve | SampledCurve


def curve_samples(
    curve: ZetaCurve, frame: BoundaryFrame, schedule=None
) -> tuple[tuple[float, ...], tuple[ComplexPoint, ...]]:
    """Sample points of the curve: the schedule for exponent curves, the
    stored table for sampled ones."""
    if isinstance(curve, SampledCurve):
        return curve.ts, curve.points
    ts = tuple(schedule if schedule is not None else DEFAULT_SCHEDULE)
    return ts, tuple(curve.point_at(t, frame) for t in ts)


def to_sampled(curve: ZetaCurve, frame: BoundaryFrame, schedule=None) -> SampledCurve:
    ts, points = curve_samples(curve, frame, schedule)
    return SampledCurve(ts, points, t_min=getattr(curve, "t_min", 0.0))


def project_curve(curve: ZetaCurve, frame: BoundaryFrame) -> ZetaCurve:
    """Pointwise projection onto the complex normal line; exponent curves
    keep their closed form with the tangential part dropped."""
    if isinstance(curve, ExponentCurve):
        return dataclasses.replace(curve, tangential_scale=0.0)
    return SampledCurve(
        curve.ts,
        tuple(project_to_normal_line(p, frame) for p in curve.points),
        t_min=curve.t_min,
    )


@dataclass(frozen=True)
class CurveClassification:
    special: Verdict
    nontangential_projection: Verdict
    restricted: Verdict
    measured_ratio_trend: tuple[tuple[float, float], ...]


def _tail_window(ts, values):
    """Samples with s = 1 - t at most TAIL_S_MAX (the tail window extends
    with the schedule: every sample beyond 1 - TAIL_S_MAX belongs to it)."""
    picked = [(t, v) for t, v in zip(ts, values) if 1.0 - t <= TAIL_S_MAX]
    if len(picked) < MIN_TAIL_SAMPLES:
        raise TooFewSamples(
            f"{len(picked)} samples in the tail window, need {MIN_TAIL_SAMPLES}"
        )
    return picked


def _fit_log_exponent(ss, values, floor=1e-300):
    """Least-squares exponent E in values ~ s^E over the window."""
    logs = np.log10(np.maximum(np.asarray(values, dtype=float), floor))
    logss = np.log10(np.asarray(ss, dtype=float))
    return float(np.polyfit(logss, logs, 1)[0])


def _classify_special_numeric(ts, ratios, tangential, ratio_tol) -> Verdict:
    window = _tail_window(ts, list(zip(ratios, tangential)))
    tail_ratios = [r for _, (r, _) in window]
    tail_tang = [d for _, (_, d) in window]
    if max(tail_tang) < 1e-14:
        return Verdict.YES  # tangential displacement numerically zero
    quarter = max(2, len(tail_ratios) // 4)
    tail_max = max(tail_ratios[-quarter:])
    ss = [1.0 - t for t, _ in window]
    exponent = _fit_log_exponent(ss, tail_ratios)
    if exponent > SLOPE_EPS and tail_max < ratio_tol:
        return Verdict.YES
    if min(tail_ratios[-quarter:]) > 1.0 / ratio_tol or exponent < -SLOPE_EPS:
        return Verdict.NO
    return Verdict.INCONCLUSIVE


def _classify_nontangential_numeric(ts, normal_coords, alpha_grid) -> Verdict:
    window = _tail_window(ts, normal_coords)
    ws = [w for _, w in window]
    if any(w.real <= 0.0 for w in ws):
        return Verdict.NO
    slopes = [abs(w.imag) / w.real for w in ws]
    for alpha in sorted(alpha_grid):
        if max(slopes) <= alpha - 1.0:
            return Verdict.YES
    ss = [1.0 - t for t, _ in window]
    exponent = _fit_log_exponent(ss, [max(r, 1e-300) for r in slopes])
    if exponent < -SLOPE_EPS:
        return Verdict.NO  # cone ratio grows without bound: tangential
    return Verdict.INCONCLUSIVE


def classify(
    curve: ZetaCurve,
    frame: BoundaryFrame,
    schedule=None,
    ratio_tol: float = RATIO_TOL,
    alpha_grid=STOLZ_ALPHA_GRID,
) -> CurveClassification:
    """Special / non-tangential-projection / restricted verdicts.

    Exponent curves use exact arithmetic: special iff m*b > a strictly
    (trivially yes with no tangential part), and the real-positive normal
    law always approaches inside a Stolz cone.  Sampled curves fall back to
    the measured ratio trend over the tail window.
    """
    m = frame.type_m
    if m is None or m < 1:
        raise ValueError("frame.type_m must be a positive integer for classification")
    ts, points = curve_samples(curve, frame, schedule)
    gammas = [project_to_normal_line(p, frame) for p in points]
    normal_dists = [(frame.zeta - g).norm() for g in gammas]
    tangential_dists = [(p - g).norm() for p, g in zip(points, gammas)]
    trend = tuple(
        (t, (d**m / nd) if nd > 0.0 else math.inf)
        for t, d, nd in zip(ts, tangential_dists, normal_dists)
    )
    if isinstance(curve, ExponentCurve):
        if curve.tangential_scale == 0.0:
            special = Verdict.YES
        else:
            special = (
                Verdict.YES
                if m * curve.tangential_exponent > curve.normal_exponent
                else Verdict.NO
            )
        nontangential = Verdict.YES
    else:
        ratios = [r for _, r in trend]
        special = _classify_special_numeric(ts, ratios, tangential_dists, ratio_tol)
        normal_coords = [frame.normal_coordinate(p) for p in points]
        nontangential = _classify_nontangential_numeric(ts, normal_coords, alpha_grid)
    return CurveClassification(
        special=special,
        nontangential_projection=nontangential,
        restricted=_both(special, nontangential),
        measured_ratio_trend=trend,
    )


@dataclass(frozen=True)
class AdmissibleRegion:
    """Anisotropic approach region at the frame's boundary point: a Stolz
    cone of aperture alpha in the normal coordinate, with tangential extent
    delta^(1/m) at normal depth delta."""

    frame: BoundaryFrame
    alpha: float
    m: int

    def __post_init__(self):
        if self.alpha <= 1.0:
            raise ValueError("aperture alpha must exceed 1")
        if self.m < 1:
            raise ValueError("type m must be a positive integer")


def in_admissible(p: ComplexPoint, region: AdmissibleRegion) -> bool:
    w = region.frame.normal_coordinate(p)
    if w.real <= 0.0:
        return False
    if abs(w.imag) >= region.alpha * w.real:
        return False
    depth = abs(w)
    tangential = abs(region.frame.tangential_coordinate(p))
    return tangential**region.m < region.alpha * depth


@dataclass(frozen=True)
class Capture:
    alpha: float
    t0: float


def eventually_in_admissible(
    curve: ZetaCurve,
    frame: BoundaryFrame,
    alpha_grid=STOLZ_ALPHA_GRID,
    schedule=None,
    min_tail: int = MIN_CAPTURE_SAMPLES,
) -> Capture | None:
    """Smallest grid alpha whose region contains the whole sampled tail of
    the curve (at least min_tail trailing samples), or None if no grid
    aperture captures it."""
    m = frame.type_m
    if m is None or m < 1:
        raise ValueError("frame.type_m must be a positive integer")
    ts, points = curve_samples(curve, frame, schedule)
    for alpha in sorted(alpha_grid):
        region = AdmissibleRegion(frame=frame, alpha=alpha, m=m)
        flags = [in_admissible(p, region) for p in points]
        last_fail = -1
        for i, ok in enumerate(flags):
            if not ok:
                last_fail = i
        if len(flags) - (last_fail + 1) >= min_tail:
            return Capture(alpha=alpha, t0=ts[last_fail] if last_fail >= 0 else 0.0)
    return None
