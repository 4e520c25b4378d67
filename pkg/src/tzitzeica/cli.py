"""Command-line front end.

Exit codes: 0 success, 1 verification failed, 2 usage error, 3 the quantity
could not be computed (degenerate point, domain error, empty mesh, ...).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import numpy as np

from .catalog import SURFACE_NAMES, catalog_entries, get_surface, implicit_surface
from .errors import ParseError, TzitzeicaError
from .field import parse_field
from .kernel import Orientation, Thresholds, tzitzeica_invariant
from .mesh import MeshConfig, generate_mesh, write_mesh
from .verifier import ode_residual, solve_exponent, tz_closed_form, verify_constancy

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _floats(text: str, count: int | None = None, sep: str = ",") -> list[float]:
    try:
        values = [float(v) for v in text.split(sep)]
    except ValueError:
        raise UsageError(f"expected {sep!r}-separated numbers, got {text!r}") from None
    if count is not None and len(values) != count:
        raise UsageError(f"expected {count} values, got {len(values)} in {text!r}")
    return values


def _common(parser: argparse.ArgumentParser, output=("text", "json", "csv")):
    parser.add_argument("--output", choices=output, default="text")


def _geometry(parser: argparse.ArgumentParser):
    parser.add_argument("--orientation", choices=["paper", "opposite"], default="paper")
    parser.add_argument("--on-surface-tol", type=float, default=1e-9)
    parser.add_argument("--gradient-eps", type=float, default=1e-12)
    parser.add_argument("--distance-eps", type=float, default=1e-12)


def _thresholds(args) -> Thresholds:
    return Thresholds(
        gradient=args.gradient_eps, distance=args.distance_eps, on_surface=args.on_surface_tol
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tzitzeica", description="Centroaffine Tzitzeica invariant of implicit hypersurfaces."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="curvature, support distance and invariant at a point")
    p.add_argument("--field", required=True, help='defining function, e.g. "x1*x2*x3 - 1"')
    p.add_argument("--point", required=True, help="comma-separated coordinates")
    _geometry(p)
    _common(p)

    p = sub.add_parser("verify", help="sample a surface and test constancy of the invariant")
    p.add_argument(
        "--surface", required=True, help=f"one of {', '.join(SURFACE_NAMES)} or a field expression"
    )
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--branch", choices=["positive", "negative"], default="positive")
    p.add_argument("--workers", type=int, default=1)
    _geometry(p)
    _common(p)

    p = sub.add_parser("ode-check", help="residual of the reduced ODE for a radial profile")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--profile", required=True, help="f(t) written in x1, e.g. x1^-2")
    p.add_argument("--t-range", default="0.5:5:10", help="start:stop:steps")
    p.add_argument("--target", default=None, help="rational constant; default (-n)^n/(n+1)^(n+1)")
    p.add_argument("--tol", type=float, default=1e-8)
    _common(p)

    p = sub.add_parser("exponent", help="solve the degree equation for f = t^a")
    p.add_argument("--n", type=int, required=True)
    _common(p, ("text", "json"))

    p = sub.add_parser("constant", help="exact invariant of the new hypersurface")
    p.add_argument("--n", type=int, required=True)
    _common(p, ("text", "json"))

    p = sub.add_parser("mesh", help="triangle mesh of z = 1/(x^2 + y^2)")
    p.add_argument("--range", default="-5,5,-5,5", help="umin,umax,vmin,vmax")
    p.add_argument("--res", type=int, default=120)
    p.add_argument("--clip", type=float, default=10.0)
    p.add_argument("--exclude", type=float, default=0.15)
    p.add_argument("--format", choices=["obj", "csv"], required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("catalog", help="list built-in surfaces as JSON")
    p.add_argument("--n", type=int, nargs="*", default=[2])
    return parser


def _emit_table(header, rows, out):
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def cmd_eval(args, out) -> int:
    field = parse_field(args.field)
    point = _floats(args.point)
    if len(point) < field.dimension:
        raise UsageError(f"field uses x{field.dimension} but the point has {len(point)} coordinates")
    s = tzitzeica_invariant(
        field, point, Orientation.parse(args.orientation), _thresholds(args)
    )
    record = {
        "point": [float(c) for c in s.point],
        "orientation": args.orientation,
        "determinant": s.determinant,
        "gradientNorm": s.gradient_norm,
        "K": s.curvature,
        "d": s.distance,
        "Tz": s.tzitzeica,
    }
    if args.output == "json":
        json.dump(record, out, indent=2)
        out.write("\n")
    elif args.output == "csv":
        keys = ["determinant", "gradientNorm", "K", "d", "Tz"]
        coords = [f"x{i}" for i in range(1, len(point) + 1)]
        _emit_table(coords + keys, [[repr(c) for c in record["point"]] + [repr(record[k]) for k in keys]], out)
    else:
        out.write(f"K = {s.curvature!r}\nd = {s.distance!r}\nTz = {s.tzitzeica!r}\n")
    return EXIT_OK


def _resolve_surface(args):
    if args.surface.lower() in SURFACE_NAMES:
        branch = 1 if args.branch == "positive" else -1
        return get_surface(args.surface, args.n, branch=branch)
    return implicit_surface(parse_field(args.surface), n=args.n)


def cmd_verify(args, out) -> int:
    spec = _resolve_surface(args)
    report = verify_constancy(
        spec,
        args.count,
        seed=args.seed,
        orientation=args.orientation,
        tol=args.tol,
        thresholds=_thresholds(args),
        workers=args.workers,
    )
    if args.output == "json":
        out.write(report.to_json() + "\n")
    elif args.output == "csv":
        out.write(report.to_csv())
    else:
        expected = "none" if report.expected is None else str(report.expected)
        out.write(
            f"surface: {report.name} (n={report.n})\n"
            f"orientation: {report.orientation.value}\n"
            f"samples: {report.sample_count} (skipped {len(report.skipped)}), seed {report.seed}\n"
            f"mean Tz: {report.mean!r}\n"
            f"max |Tz - mean|: {report.max_abs_deviation!r}\n"
            f"expected: {expected}\n"
            f"result: {'PASS' if report.passed else 'FAIL'}\n"
        )
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_ode_check(args, out) -> int:
    profile = parse_field(args.profile, 1)
    parts = args.t_range.split(":")
    if len(parts) != 3:
        raise UsageError("--t-range must be start:stop:steps")
    start, stop = _floats(f"{parts[0]},{parts[1]}", 2)
    try:
        steps = int(parts[2])
    except ValueError:
        raise UsageError("steps in --t-range must be an integer") from None
    if steps < 1:
        raise UsageError("steps in --t-range must be >= 1")
    try:
        target = tz_closed_form(args.n) if args.target is None else Fraction(args.target)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    ts = np.linspace(start, stop, steps)
    rows = [(float(t), ode_residual(args.n, profile, float(t), target)) for t in ts]
    ok = all(r <= args.tol for _, r in rows)
    if args.output == "json":
        json.dump(
            {
                "n": args.n,
                "profile": str(profile),
                "target": str(target),
                "residuals": [{"t": t, "residual": r} for t, r in rows],
                "pass": ok,
            },
            out,
            indent=2,
        )
        out.write("\n")
    elif args.output == "csv":
        _emit_table(["t", "residual"], [[repr(t), repr(r)] for t, r in rows], out)
    else:
        for t, r in rows:
            out.write(f"t = {t!r}  residual = {r!r}\n")
        out.write(f"result: {'PASS' if ok else 'FAIL'}\n")
    return EXIT_OK if ok else EXIT_FAIL


def _rational_command(value: Fraction, key: str, args, out) -> int:
    if args.output == "json":
        json.dump({"n": args.n, key: str(value)}, out)
        out.write("\n")
    else:
        out.write(f"{value}\n")
    return EXIT_OK


def cmd_mesh(args, out) -> int:
    bounds = _floats(args.range, 4)
    config = MeshConfig(
        u_range=(bounds[0], bounds[1]),
        v_range=(bounds[2], bounds[3]),
        resolution=args.res,
        z_clip=args.clip,
        exclusion_radius=args.exclude,
    )
    mesh = generate_mesh(config)
    try:
        path = write_mesh(mesh, args.format, args.out)
    except OSError as exc:
        raise TzitzeicaError(f"cannot write {args.out}: {exc}") from exc
    out.write(f"wrote {len(mesh.vertices)} vertices, {len(mesh.triangles)} triangles to {path}\n")
    return EXIT_OK


def cmd_catalog(args, out) -> int:
    entries = [spec.to_dict() for spec in catalog_entries(args.n)]
    json.dump(entries, out, indent=2)
    out.write("\n")
    return EXIT_OK


COMMANDS = {
    "eval": cmd_eval,
    "verify": cmd_verify,
    "ode-check": cmd_ode_check,
    "exponent": lambda a, o: _rational_command(solve_exponent(a.n), "exponent", a, o),
    "constant": lambda a, o: _rational_command(tz_closed_form(a.n), "constant", a, o),
    "mesh": cmd_mesh,
    "catalog": cmd_catalog,
}


# flags whose values may legitimately begin with '-'
_SIGNED_VALUE_FLAGS = {"--point", "--range", "--target", "--field", "--surface", "--profile", "--t-range"}


def _glue_signed_values(argv: list[str]) -> list[str]:
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok in _SIGNED_VALUE_FLAGS and nxt is not None and nxt.startswith("-") and not nxt.startswith("--"):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_signed_values(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    # buffer so a failed command never leaves partial output behind
    buf = io.StringIO()
    try:
        code = COMMANDS[args.command](args, buf)
    except (UsageError, ParseError) as exc:
        err.write(f"tzitzeica: error: {exc}\n")
        return EXIT_USAGE
    except TzitzeicaError as exc:
        err.write(f"tzitzeica: {type(exc).__name__}: {exc}\n")
        return EXIT_DEGENERATE
    except (ValueError, KeyError) as exc:
        err.write(f"tzitzeica: error: {exc}\n")
        return EXIT_USAGE
    out.write(buf.getvalue())
    return code


def main() -> None:
    sys.exit(run())
