"""Scenario files, reports, and trace tables.

Scenario files are flat, line-oriented `key = value` text so fixtures diff
cleanly; repeated `curve =` lines declare the curve family, and `sample =`
lines attach table rows to the most recent sampled curve.  Reports are
JSON with a fixed field order (byte-identical across runs); traces are CSV
with one file per curve, directly plottable.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .curves import (
    DEFAULT_SCHEDULE,
    RATIO_TOL,
    STOLZ_ALPHA_GRID,
    ExponentCurve,
    PhaseLaw,
    SampledCurve,
    ZetaCurve,
)
from .errors import ScenarioParseError
from .geometry import (
    BUILTIN_DOMAINS,
    DEFAULT_MEMBERSHIP_TOL,
    ComplexPoint,
    DomainModel,
    boundary_frame,
)
from .holo import catalog
from .lindelof import LIMIT_TOL, CurveRecord, Scenario, VerificationReport

REPORT_SCHEMA = "lindelof2.report.v1"
TRACE_HEADER = "t,s,normal_dist,tangential_dist,ratio,k,R,gap,bound,f_re,f_im"


@dataclass
class CurveSpec:
    name: str
    kind: str  # "exponent" | "sampled"
    role: str = "test"
    params: dict = field(default_factory=dict)
    samples: list[tuple[float, complex, complex]] = field(default_factory=list)


@dataclass
class ScenarioFile:
    """Raw parsed scenario, prior to domain/function resolution."""

    scenario_id: str
    domain_spec: str
    zeta: tuple[float, float, float, float]
    function_id: str
    curves: list[CurveSpec]
    type_m: int | None = None
    schedule_spec: str = "default"
    limit_tol: float = LIMIT_TOL
    ratio_tol: float = RATIO_TOL
    membership_tol: float = DEFAULT_MEMBERSHIP_TOL
    alpha_grid: tuple[float, ...] = STOLZ_ALPHA_GRID
    lambda_grid_size: int = 12


def parse_schedule_spec(spec: str) -> tuple[float, ...]:
    """`default`, or `geom K_START K_STOP PER_DECADE` for the schedule
    t_k = 1 - 10^(-k/per_decade)."""
    tokens = spec.split()
    if tokens == ["default"]:
        return DEFAULT_SCHEDULE
    if len(tokens) == 4 and tokens[0] == "geom":
        k_start, k_stop, per_decade = (int(x) for x in tokens[1:])
        if not (0 < k_start <= k_stop and per_decade > 0):
            raise ValueError(f"bad geometric schedule bounds: {spec!r}")
        from .curves import geometric_schedule

        return geometric_schedule(k_start, k_stop, per_decade)
    raise ValueError(f"unknown schedule spec {spec!r}")


def _parse_kv_tokens(value: str, line_no: int, fieldname: str) -> dict[str, str]:
    out = {}
    for token in value.split():
        if "=" not in token:
            raise ScenarioParseError(line_no, fieldname, f"expected key=value, got {token!r}")
        key, _, val = token.partition("=")
        if not key or not val:
            raise ScenarioParseError(line_no, fieldname, f"empty key or value in {token!r}")
        out[key] = val
    return out


def _floats(value: str, n: int, line_no: int, fieldname: str) -> tuple[float, ...]:
    parts = value.split()
    if len(parts) != n:
        raise ScenarioParseError(line_no, fieldname, f"expected {n} numbers, got {len(parts)}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise ScenarioParseError(line_no, fieldname, str(exc)) from None


def parse_scenario_text(text: str, source: str = "<string>") -> ScenarioFile:
    fields: dict[str, str] = {}
    curves: list[CurveSpec] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioParseError(line_no, "<line>", f"expected key = value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "curve":
            tokens = _parse_kv_tokens(value, line_no, "curve")
            kind = tokens.pop("kind", "exponent")
            if kind not in ("exponent", "sampled"):
                raise ScenarioParseError(line_no, "curve", f"unknown kind {kind!r}")
            name = tokens.pop("name", f"curve{len(curves)}")
            role = tokens.pop("role", "test")
            if role not in ("base", "test"):
                raise ScenarioParseError(line_no, "curve", f"unknown role {role!r}")
            params = {}
            for pkey, pval in tokens.items():
                if pkey not in ("a", "cn", "b", "ct", "theta", "omega", "tmin"):
                    raise ScenarioParseError(line_no, "curve", f"unknown parameter {pkey!r}")
                try:
                    params[pkey] = float(pval)
                except ValueError:
                    raise ScenarioParseError(
                        line_no, "curve", f"parameter {pkey}={pval!r} is not a number"
                    ) from None
            curves.append(CurveSpec(name=name, kind=kind, role=role, params=params))
        elif key == "sample":
            if not curves or curves[-1].kind != "sampled":
                raise ScenarioParseError(
                    line_no, "sample", "sample line without a preceding sampled curve"
                )
            t, re1, im1, re2, im2 = _floats(value, 5, line_no, "sample")
            curves[-1].samples.append((t, complex(re1, im1), complex(re2, im2)))
        elif key in fields:
            raise ScenarioParseError(line_no, key, "duplicate field")
        else:
            fields[key] = value

    def need(name: str) -> str:
        if name not in fields:
            raise ScenarioParseError(0, name, f"missing required field in {source}")
        return fields[name]

    zeta = _floats(need("zeta"), 4, 0, "zeta")
    try:
        schedule_spec = fields.get("schedule", "default")
        parse_schedule_spec(schedule_spec)
    except ValueError as exc:
        raise ScenarioParseError(0, "schedule", str(exc)) from None
    out = ScenarioFile(
        scenario_id=need("id"),
        domain_spec=need("domain"),
        zeta=zeta,
        function_id=need("function"),
        curves=curves,
        schedule_spec=schedule_spec,
    )
    if "type_m" in fields:
        out.type_m = int(fields["type_m"])
    for name, attr in (
        ("limit_tol", "limit_tol"),
        ("ratio_tol", "ratio_tol"),
        ("membership_tol", "membership_tol"),
    ):
        if name in fields:
            try:
                setattr(out, attr, float(fields[name]))
            except ValueError:
                raise ScenarioParseError(0, name, f"not a number: {fields[name]!r}") from None
    if "alpha_grid" in fields:
        out.alpha_grid = _floats(fields["alpha_grid"], len(fields["alpha_grid"].split()), 0, "alpha_grid")
    if "lambda_grid" in fields:
        out.lambda_grid_size = int(fields["lambda_grid"])
    known = {
        "id", "domain", "zeta", "function", "type_m", "schedule",
        "limit_tol", "ratio_tol", "membership_tol", "alpha_grid", "lambda_grid",
    }
    for name in fields:
        if name not in known:
            raise ScenarioParseError(0, name, "unknown field")
    return out


def load_scenario_file(path: str | Path) -> ScenarioFile:
    path = Path(path)
    return parse_scenario_text(path.read_text(encoding="utf-8"), source=str(path))


def resolve_domain(spec: str, membership_tol: float) -> DomainModel:
    tokens = spec.split()
    name, args = tokens[0], tokens[1:]
    if name not in BUILTIN_DOMAINS:
        raise ValueError(f"unknown domain {name!r}; known: {sorted(BUILTIN_DOMAINS)}")
    if name == "egg":
        if len(args) != 1:
            _bad_domain(spec)
        return BUILTIN_DOMAINS[name](int(args[0]), membership_tol=membership_tol)
    if name == "perturbed_egg":
        if len(args) != 2:
            _bad_domain(spec)
        return BUILTIN_DOMAINS[name](int(args[0]), float(args[1]), membership_tol=membership_tol)
    _bad_domain(spec)


def _bad_domain(spec: str):
    raise ValueError(f"malformed domain spec {spec!r}")


def _build_curve(spec: CurveSpec) -> ZetaCurve:
    if spec.kind == "sampled":
        if not spec.samples:
            raise ValueError(f"sampled curve {spec.name!r} has no sample rows")
        ts = tuple(t for t, _, _ in spec.samples)
        points = tuple(ComplexPoint(z1, z2) for _, z1, z2 in spec.samples)
        return SampledCurve(ts, points, t_min=spec.params.get("tmin", 0.0))
    p = spec.params
    return ExponentCurve(
        normal_exponent=p.get("a", 1.0),
        normal_scale=p.get("cn", 1.0),
        tangential_exponent=p.get("b", 1.0),
        tangential_scale=p.get("ct", 0.0),
        phase=PhaseLaw(theta0=p.get("theta", 0.0), omega=p.get("omega", 0.0)),
        t_min=p.get("tmin", 0.0),
    )


@dataclass(frozen=True)
class ScenarioContext:
    """Resolved domain, frame, schedule, and curves: everything a
    classification pass needs, with no base-curve requirement."""

    scenario_id: str
    domain: DomainModel
    frame: "object"
    function: "object"
    schedule: tuple[float, ...]
    curves: tuple[tuple[str, str, ZetaCurve], ...]  # (name, role, curve)
    limit_tol: float
    ratio_tol: float
    alpha_grid: tuple[float, ...]
    lambda_grid_size: int


def resolve_context(
    sf: ScenarioFile,
    schedule_override: str | None = None,
    ratio_tol_override: float | None = None,
    limit_tol_override: float | None = None,
    check_type: bool = False,
) -> ScenarioContext:
    """Resolve a parsed file: build the domain and frame, compute the type
    when it is not declared, and with check_type reject a declared type
    that disagrees with the computed one."""
    domain = resolve_domain(sf.domain_spec, sf.membership_tol)
    zeta = ComplexPoint(complex(sf.zeta[0], sf.zeta[1]), complex(sf.zeta[2], sf.zeta[3]))
    from .contact import point_type

    type_m = sf.type_m
    if type_m is None:
        type_m = point_type(domain, zeta)
    elif check_type:
        computed = point_type(domain, zeta)
        if computed != type_m:
            raise ValueError(
                f"declared type {type_m} does not match computed type {computed}"
            )
    frame = boundary_frame(domain, zeta, type_m)
    function = catalog(sf.function_id)
    schedule = parse_schedule_spec(schedule_override or sf.schedule_spec)
    return ScenarioContext(
        scenario_id=sf.scenario_id,
        domain=domain,
        frame=frame,
        function=function,
        schedule=schedule,
        curves=tuple((c.name, c.role, _build_curve(c)) for c in sf.curves),
        limit_tol=limit_tol_override if limit_tol_override is not None else sf.limit_tol,
        ratio_tol=ratio_tol_override if ratio_tol_override is not None else sf.ratio_tol,
        alpha_grid=sf.alpha_grid,
        lambda_grid_size=sf.lambda_grid_size,
    )


def build_scenario(
    sf: ScenarioFile,
    schedule_override: str | None = None,
    ratio_tol_override: float | None = None,
    limit_tol_override: float | None = None,
    check_type: bool = False,
) -> Scenario:
    """Resolve a parsed file into a runnable theorem scenario; the base
    curve is the one with role=base (the first curve otherwise)."""
    ctx = resolve_context(
        sf, schedule_override, ratio_tol_override, limit_tol_override, check_type
    )
    base_indices = [i for i, (_, role, _) in enumerate(ctx.curves) if role == "base"]
    if len(base_indices) > 1:
        raise ValueError("more than one base curve declared")
    if not ctx.curves:
        raise ValueError("scenario declares no curves")
    base_idx = base_indices[0] if base_indices else 0
    base_name, _, base = ctx.curves[base_idx]
    tests = tuple(
        (name, curve)
        for i, (name, _, curve) in enumerate(ctx.curves)
        if i != base_idx
    )
    return Scenario(
        scenario_id=ctx.scenario_id,
        domain=ctx.domain,
        frame=ctx.frame,
        function=ctx.function,
        base_name=base_name,
        base=base,
        test_curves=tests,
        schedule=ctx.schedule,
        limit_tol=ctx.limit_tol,
        ratio_tol=ctx.ratio_tol,
        alpha_grid=ctx.alpha_grid,
        lambda_grid_size=ctx.lambda_grid_size,
    )


def _complex_pair(value: complex | None):
    if value is None:
        return None
    return [value.real, value.imag]


def _curve_record_dict(rec: CurveRecord) -> dict:
    applicable = [c for c in rec.schwarz if c.applicable]
    return {
        "name": rec.name,
        "role": rec.role,
        "special": rec.classification.special.value,
        "nontangential": rec.classification.nontangential_projection.value,
        "restricted": rec.classification.restricted.value,
        "capture": (
            {"alpha": rec.capture.alpha, "t0": rec.capture.t0} if rec.capture else None
        ),
        "limit_status": rec.limit.status.value,
        "limit_value": _complex_pair(rec.limit.value),
        "limit_residual": rec.limit.residual,
        "limit_amplitude": rec.limit.amplitude,
        "limit_agrees": rec.limit_agrees,
        "one_var_passed": rec.one_var.passed if rec.one_var else None,
        "schwarz_checked": len(rec.schwarz),
        "schwarz_applicable": len(applicable),
        "schwarz_passed": sum(1 for c in applicable if c.passed),
        "schwarz_all_passed": rec.schwarz_all_passed,
        "gap_tail_max": rec.gap_tail_max(),
        "k_tail_inf": rec.k_tail_inf,
        "mandatory": rec.mandatory,
    }


def report_to_dict(report: VerificationReport) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "scenario": report.scenario_id,
        "verdict": report.verdict,
        "reason": report.reason,
        "type_m": report.type_m,
        "limit": _complex_pair(report.limit),
        "k_scenario": report.k_scenario,
        "k_decay_warning": report.k_decay_warning,
        "curves": [_curve_record_dict(rec) for rec in report.curves],
    }


def report_json(report: VerificationReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def parse_report(text: str) -> dict:
    """Re-parse an emitted report and validate the documented schema."""
    data = json.loads(text)
    if data.get("schema") != REPORT_SCHEMA:
        raise ValueError(f"unknown report schema {data.get('schema')!r}")
    required = {
        "schema", "scenario", "verdict", "reason", "type_m",
        "limit", "k_scenario", "k_decay_warning", "curves",
    }
    missing = required - set(data)
    if missing:
        raise ValueError(f"report missing fields: {sorted(missing)}")
    if data["verdict"] not in ("Pass", "Fail", "BadScenario"):
        raise ValueError(f"bad verdict {data['verdict']!r}")
    curve_required = {
        "name", "role", "special", "nontangential", "restricted", "capture",
        "limit_status", "limit_value", "limit_residual", "limit_amplitude",
        "limit_agrees", "one_var_passed", "schwarz_checked", "schwarz_applicable",
        "schwarz_passed", "schwarz_all_passed", "gap_tail_max", "k_tail_inf",
        "mandatory",
    }
    for curve in data["curves"]:
        cmissing = curve_required - set(curve)
        if cmissing:
            raise ValueError(f"curve record missing fields: {sorted(cmissing)}")
    return data


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return repr(value)


def trace_rows(rec: CurveRecord, type_m: int) -> list[str]:
    """CSV rows t, s, |zeta-gamma|, |Gamma-gamma|, ratio, k, R, gap, bound,
    f_re, f_im for one curve."""
    rows = [TRACE_HEADER]
    limit_by_t = dict(rec.limit.trace)
    for geom, check in zip(rec.geometries, rec.schwarz):
        normal = geom.normal_dist
        tangential = geom.tangential_dist
        ratio = tangential**type_m / normal if normal > 0 else math.inf
        fval = limit_by_t.get(geom.t)
        rows.append(
            ",".join(
                [
                    _format_cell(geom.t),
                    _format_cell(1.0 - geom.t),
                    _format_cell(normal),
                    _format_cell(tangential),
                    _format_cell(ratio),
                    _format_cell(geom.k),
                    _format_cell(geom.radius),
                    _format_cell(check.gap),
                    _format_cell(check.bound),
                    _format_cell(fval.real if fval is not None else None),
                    _format_cell(fval.imag if fval is not None else None),
                ]
            )
        )
    return rows


def atomic_write_text(path: Path, text: str) -> None:
    """Write via a temp file in the same directory, then rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_report_files(report: VerificationReport, out_dir: str | Path) -> list[Path]:
    """Write <id>.report.json plus one <id>.<curve>.trace.csv per curve;
    returns the written paths (reports first)."""
    out_dir = Path(out_dir)
    written = []
    report_path = out_dir / f"{report.scenario_id}.report.json"
    atomic_write_text(report_path, report_json(report))
    written.append(report_path)
    for rec in report.curves:
        trace_path = out_dir / f"{report.scenario_id}.{rec.name}.trace.csv"
        atomic_write_text(trace_path, "\n".join(trace_rows(rec, report.type_m)) + "\n")
        written.append(trace_path)
    return written
