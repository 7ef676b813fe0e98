"""Command-line scenario runner.

Subcommands: run, classify, type, list-functions.  Exit codes: 0 when
every scenario passes, 1 for I/O or parse errors, 2 for a rejected
scenario (hypothesis violation, type mismatch, point off the boundary),
3 when a valid scenario runs but a mandatory check fails.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import sys
import time
from pathlib import Path

from .contact import point_type
from .curves import classify, eventually_in_admissible
from .errors import (
    BadScenario,
    Lindelof2Error,
    NotOnBoundary,
    ScenarioParseError,
    SingularPoint,
    UnknownFunction,
)
from .geometry import ComplexPoint, boundary_frame
from .holo import catalog, catalog_names
from .lindelof import verify_theorem
from .scenario import (
    atomic_write_text,
    build_scenario,
    load_scenario_file,
    resolve_context,
    resolve_domain,
    write_report_files,
)

EXIT_PASS = 0
EXIT_ERROR = 1
EXIT_BAD_SCENARIO = 2
EXIT_FAIL = 3


def _parse_zeta(text: str) -> ComplexPoint:
    parts = text.split()
    if len(parts) != 4:
        raise ValueError(f"zeta needs 4 numbers (re1 im1 re2 im2), got {text!r}")
    re1, im1, re2, im2 = (float(p) for p in parts)
    return ComplexPoint(complex(re1, im1), complex(re2, im2))


def _run_one(path: str, args) -> tuple[str, str, int]:
    """Run one scenario file; returns (path, verdict, exit_code)."""
    started = time.time()
    try:
        sf = load_scenario_file(path)
        scenario = build_scenario(
            sf,
            schedule_override=args.schedule,
            ratio_tol_override=args.ratio_tol,
            limit_tol_override=args.limit_tol,
            check_type=args.check_type,
        )
    except OSError as exc:
        return path, f"I/O error: {exc}", EXIT_ERROR
    except ScenarioParseError as exc:
        return path, f"parse error: {exc}", EXIT_ERROR
    except (ValueError, UnknownFunction, NotOnBoundary, SingularPoint) as exc:
        code = EXIT_BAD_SCENARIO if isinstance(exc, (NotOnBoundary, SingularPoint)) else EXIT_ERROR
        if isinstance(exc, ValueError) and "does not match computed type" in str(exc):
            code = EXIT_BAD_SCENARIO
        return path, f"rejected: {exc}", code

    try:
        report = verify_theorem(scenario, raise_on_bad=False)
    except Lindelof2Error as exc:
        return path, f"run failed: {exc}", EXIT_ERROR
    out_dir = Path(args.out)
    write_report_files(report, out_dir)
    elapsed = time.time() - started
    atomic_write_text(
        out_dir / f"{report.scenario_id}.log",
        f"scenario {report.scenario_id}\nfinished_at {time.strftime('%Y-%m-%dT%H:%M:%S')}"
        f"\nelapsed_seconds {elapsed:.3f}\n",
    )
    if report.verdict == "Pass":
        return path, "Pass", EXIT_PASS
    if report.verdict == "BadScenario":
        return path, f"BadScenario: {report.reason}", EXIT_BAD_SCENARIO
    return path, f"Fail: {report.reason}", EXIT_FAIL


def cmd_run(args) -> int:
    paths = list(args.scenarios)
    if args.jobs > 1 and len(paths) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, paths, [args] * len(paths)))
    else:
        results = [_run_one(p, args) for p in paths]
    worst = EXIT_PASS
    for path, message, code in results:
        print(f"{path}: {message}")
        # I/O and parse errors dominate; then hypothesis rejection; then failure.
        order = {EXIT_ERROR: 3, EXIT_BAD_SCENARIO: 2, EXIT_FAIL: 1, EXIT_PASS: 0}
        if order[code] > order[worst]:
            worst = code
    return worst


def cmd_classify(args) -> int:
    try:
        sf = load_scenario_file(args.scenario)
        ctx = resolve_context(
            sf,
            schedule_override=args.schedule,
            ratio_tol_override=args.ratio_tol,
            check_type=args.check_type,
        )
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ScenarioParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (NotOnBoundary, SingularPoint) as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_BAD_SCENARIO
    except (ValueError, UnknownFunction) as exc:
        if "does not match computed type" in str(exc):
            print(f"rejected: {exc}", file=sys.stderr)
            return EXIT_BAD_SCENARIO
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    header = f"{'name':<18} {'role':<5} {'special':<13} {'nontangential':<13} {'restricted':<13} {'capture':<10}"
    print(header)
    print("-" * len(header))
    for name, role, curve in ctx.curves:
        cls = classify(curve, ctx.frame, ctx.schedule, ctx.ratio_tol, ctx.alpha_grid)
        capture = eventually_in_admissible(curve, ctx.frame, ctx.alpha_grid, ctx.schedule)
        cap_text = f"a={capture.alpha:g}" if capture else "no"
        print(
            f"{name:<18} {role:<5} {cls.special.value:<13} "
            f"{cls.nontangential_projection.value:<13} {cls.restricted.value:<13} {cap_text:<10}"
        )
    return EXIT_PASS


def cmd_type(args) -> int:
    try:
        domain = resolve_domain(args.domain, membership_tol=1e-12)
        zeta = _parse_zeta(args.zeta)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        boundary_frame(domain, zeta)  # fails early with a clear message
        m = point_type(domain, zeta, disc_degree_bound=args.disc_degree_bound)
    except (NotOnBoundary, SingularPoint) as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_BAD_SCENARIO
    except Lindelof2Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(m)
    return EXIT_PASS


def cmd_list_functions(args) -> int:
    for name in catalog_names():
        f = catalog(name)
        if f.expected_behavior == "limit":
            behavior = f"limit {f.expected_limit}"
        else:
            behavior = f.expected_behavior
        print(f"{name:<10} sup_norm={f.sup_norm:<20.17g} behavior at (1,0): {behavior}")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lindelof2",
        description="Classify boundary-approach curves and verify limit transfer scenarios.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run theorem scenarios and write reports/traces")
    run.add_argument("scenarios", nargs="+", help="scenario files (.scn)")
    run.add_argument("--out", default="out", help="output directory (default ./out)")
    run.add_argument("--jobs", type=int, default=1, help="run scenarios concurrently")
    run.add_argument("--schedule", default=None, help="override: 'default' or 'geom K0 K1 PER_DECADE'")
    run.add_argument("--ratio-tol", type=float, default=None)
    run.add_argument("--limit-tol", type=float, default=None)
    run.add_argument("--check-type", action="store_true", help="verify declared type_m")
    run.set_defaults(func=cmd_run)

    cls = sub.add_parser("classify", help="print the per-curve classification table")
    cls.add_argument("scenario")
    cls.add_argument("--schedule", default=None)
    cls.add_argument("--ratio-tol", type=float, default=None)
    cls.add_argument("--check-type", action="store_true")
    cls.set_defaults(func=cmd_classify)

    typ = sub.add_parser("type", help="compute the type of a boundary point")
    typ.add_argument("domain", help="domain spec, e.g. 'egg 2'")
    typ.add_argument("zeta", help="boundary point: 're1 im1 re2 im2'")
    typ.add_argument("--disc-degree-bound", type=int, default=4)
    typ.set_defaults(func=cmd_type)

    lst = sub.add_parser("list-functions", help="list the function catalog")
    lst.set_defaults(func=cmd_list_functions)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
