"""Command-line front end.

Subcommands: apply (one symmetrization, body file in/out), props (empirical
property table for an operator, JSON report), converge (iterated process
along a subspace sequence, CSV/SVG out), analytic (closed-form cases with
residual checks).  Exit codes: 0 ok, 1 input error, 2 unsupported
combination, 3 property mismatch, 4 vertex cap exceeded.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from .analytic_cases import blaschke_cone, blaschke_prism, schwarz_box_radius
from .convergence_lab import VERTEX_CAP, iterate, make_sequence
from .core_geometry import DEFAULT_TOL, Subspace, VPolytope, convex_hull
from .errors import CapExceeded, InvalidInput, SymkitError, Unsupported
from .property_harness import (
    DEFAULT_CONFIG,
    HarnessConfig,
    canonical_dims,
    default_symspec,
    table_report,
)
from .serialize import atomic_write_text, dumps, load_body
from .symmetrizations import SymSpec, apply_sym

CSV_HEADER = "step,V_n,V_1,ball_distance"

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNSUPPORTED = 2
EXIT_MISMATCH = 3
EXIT_CAP = 4


def _fmt(x):
    return "%.17g" % float(x)


def _env_seed():
    raw = os.environ.get("SYMKIT_SEED")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise InvalidInput("SYMKIT_SEED must be an integer, got %r" % raw) from exc


# ---------------------------------------------------------------------------
# flag parsing helpers


def _parse_vectors(text, what):
    """';'-separated vectors of ','-separated floats."""
    try:
        rows = [
            [float(x) for x in chunk.split(",")]
            for chunk in text.split(";")
            if chunk.strip()
        ]
    except ValueError as exc:
        raise InvalidInput("cannot parse %s %r" % (what, text)) from exc
    if not rows or len({len(r) for r in rows}) != 1:
        raise InvalidInput("%s needs equal-length vectors" % what)
    return np.array(rows, dtype=float)


def _parse_subspace(text, n):
    if text == "origin":
        return Subspace.origin(n)
    if not text.startswith("basis="):
        raise InvalidInput("--subspace expects 'basis=x1,y1[,z1][;x2,y2,z2]' or 'origin'")
    basis = _parse_vectors(text[len("basis=") :], "subspace basis")
    if basis.shape[1] != n:
        raise InvalidInput("subspace vectors have dimension %d, body has %d" % (basis.shape[1], n))
    return Subspace.span(n, basis)


def _parse_params(pairs):
    out = {}
    for item in pairs or ():
        if "=" not in item:
            raise InvalidInput("--param expects key=value, got %r" % item)
        key, val = item.split("=", 1)
        out[key.strip()] = val.strip()
    return out


def _build_spec(op, subspace_text, params, body):
    n = body.ambient_dim
    if op not in SymSpec.OPS:
        raise Unsupported("unknown operator %r" % op)
    if op == "central":
        H = Subspace.origin(n)
    elif subspace_text is None:
        raise InvalidInput("--subspace is required for %r" % op)
    else:
        H = _parse_subspace(subspace_text, n)
    kwargs = {}
    if "p" in params:
        kwargs["p"] = float(params["p"])
    if "c" in params:
        kwargs["c"] = float(params["c"])
    if "M" in params:
        kwargs["M_polygon"] = convex_hull(_parse_vectors(params["M"], "M polygon"))
    if "G" in params:
        kwargs["G"] = Subspace.span(n, _parse_vectors(params["G"], "G basis"))
    if op == "central_p" and "p" not in kwargs:
        raise InvalidInput("central_p needs --param p=...")
    if op == "m_sym" and "M_polygon" not in kwargs:
        raise InvalidInput("m_sym needs --param M=x1,y1;x2,y2;...")
    return SymSpec(op=op, H=H, **kwargs)


def _parse_sequence_flag(text):
    """kind[:k=v,k=v] -> (kind, params dict)."""
    kind, _, tail = text.partition(":")
    params = {}
    for item in tail.split(",") if tail else ():
        if "=" not in item:
            raise InvalidInput("--sequence params expect key=value, got %r" % item)
        key, val = item.split("=", 1)
        params[key.strip()] = val.strip()
    return kind.strip(), params


# ---------------------------------------------------------------------------
# SVG emission


def _svg_path(points):
    return "M " + " L ".join("%s %s" % (_fmt(x), _fmt(y)) for x, y in points) + " Z"


def _body_outline(body):
    if isinstance(body, VPolytope) and body.ambient_dim == 2:
        return body.vertices
    t = getattr(body, "t", None)
    if t is not None:
        # profile cross-section through the axis: (t, +r) then (t, -r) reversed
        upper = np.column_stack([body.t, body.r])
        lower = np.column_stack([body.t[::-1], -body.r[::-1]])
        return np.vstack([upper, lower])
    raise Unsupported("SVG output covers 2-D polygons and revolution profiles")


def render_svg(bodies, labels=None):
    """Static SVG 1.1 overlay of body outlines, first to last."""
    outlines = [_body_outline(b) for b in bodies]
    allpts = np.vstack(outlines)
    lo = allpts.min(axis=0)
    hi = allpts.max(axis=0)
    pad = 0.05 * max(hi[0] - lo[0], hi[1] - lo[1], 1e-9)
    lo -= pad
    hi += pad
    width, height = hi - lo
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'viewBox="%s %s %s %s" width="480" height="480">'
        % (_fmt(lo[0]), _fmt(-hi[1]), _fmt(width), _fmt(height)),
        '<g transform="scale(1,-1)">',
    ]
    m = len(outlines)
    for k, pts in enumerate(outlines):
        shade = 20 + int(200 * (k / max(m - 1, 1)))
        color = "#%02x%02x%02x" % (shade, 40, 255 - shade)
        title = "" if labels is None else "<title>%s</title>" % labels[k]
        lines.append(
            '<path d="%s" fill="none" stroke="%s" stroke-width="%s">%s</path>'
            % (_svg_path(pts), color, _fmt(0.004 * max(width, height)), title)
        )
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_apply(args):
    body = load_body(args.infile)
    spec = _build_spec(args.op, args.subspace, _parse_params(args.param), body)
    out = apply_sym(spec, body, DEFAULT_TOL)
    atomic_write_text(args.outfile, dumps(out))
    return EXIT_OK


def cmd_props(args):
    seed = args.seed if args.seed is not None else _env_seed()
    config = HarnessConfig(
        seed=DEFAULT_CONFIG.seed if seed is None else seed,
        trials=args.trials,
    )
    rows = {}
    failures = []
    for n in canonical_dims(args.op):
        rep = table_report(default_symspec(args.op, n), config)
        rows[str(n)] = rep.to_dict()
        if not rep.ok(config):
            for col, cell in sorted(rep.cells.items()):
                status = cell["status"]
                if status not in ("match", "skipped") and not (
                    status == "inconclusive"
                    and (args.op, col) in config.inconclusive_whitelist
                ):
                    failures.append("n=%d %s: %s" % (n, col, status))
    report = {"op": args.op, "seed": config.seed, "trials": config.trials, "rows": rows}
    if args.report:
        atomic_write_text(args.report, json.dumps(report, indent=1) + "\n")
    else:
        sys.stdout.write(json.dumps(report, indent=1) + "\n")
    if failures:
        sys.stderr.write("property mismatch: %s\n" % "; ".join(failures))
        return EXIT_MISMATCH
    return EXIT_OK


def _trajectory_csv(points):
    rows = [CSV_HEADER]
    for p in points:
        rows.append(
            "%d,%s,%s,%s" % (p.step, _fmt(p.V_n), _fmt(p.V_1), _fmt(p.ball_distance))
        )
    return "\n".join(rows) + "\n"


def cmd_converge(args):
    body = load_body(args.infile)
    n = body.ambient_dim
    kind, params = _parse_sequence_flag(args.sequence)
    i = int(params.pop("i", n - 1))
    for key in ("theta",):
        if key in params:
            params[key] = float(params[key])
    if "seed" in params:
        params["seed"] = int(params["seed"])
    elif kind == "uniform_random":
        env = _env_seed()
        if env is not None:
            params["seed"] = env
    seq = make_sequence(kind, n, i, max(args.steps, 1), params)
    snapshot_every = max(1, args.steps // 8) if args.svg else 0
    try:
        traj = iterate(
            args.process,
            body,
            seq,
            start=1,
            end=args.steps,
            snapshot_every=snapshot_every,
            vertex_cap=args.cap,
        )
    except CapExceeded as exc:
        atomic_write_text(args.csv, _trajectory_csv(exc.trajectory.points))
        sys.stderr.write("%s\n" % exc)
        return EXIT_CAP
    atomic_write_text(args.csv, _trajectory_csv(traj.points))
    if args.svg:
        bodies = [b for _, b in traj.snapshots]
        labels = ["step %d" % s for s, _ in traj.snapshots]
        atomic_write_text(args.svg, render_svg(bodies, labels))
    return EXIT_OK


def cmd_analytic(args):
    if args.case in ("blaschke-cone", "blaschke-prism") and args.n < 3:
        raise InvalidInput("Blaschke cases need n >= 3")
    if args.case == "blaschke-cone":
        res = blaschke_cone(args.n)
        resid = max(abs(x) for x in res.residuals)
        print("case=blaschke-cone n=%d" % args.n)
        print("a = %.6f" % res.radius_a)
        print("h = %.6f" % res.top_radius_h)
        print("height = %.6f" % res.height)
        print("residual = %.3e" % resid)
        ok = resid <= 1e-12 and res.height < 1.0
        print("height < 1: %s" % ok)
    elif args.case == "blaschke-prism":
        res = blaschke_prism(args.n)
        resid = max(abs(x) for x in res.residuals)
        print("case=blaschke-prism n=%d" % args.n)
        print("a = %.6f" % res.radius_a)
        print("h = %.6f" % res.top_radius_h)
        print("b = %.6f" % res.width_b)
        print("residual = %.3e" % resid)
        ok = resid <= 1e-12 and res.width_b > 1.0
        print("b > 1: %s" % ok)
    elif args.case == "schwarz-box":
        if args.n < 2:
            raise InvalidInput("schwarz-box needs n >= 2")
        r = schwarz_box_radius(args.n, args.a)
        print("case=schwarz-box n=%d a=%.6f" % (args.n, args.a))
        print("r = %.6f" % r)
        ok = r > args.a
        print("r > a: %s" % ok)
    else:
        raise InvalidInput("unknown analytic case %r" % args.case)
    return EXIT_OK if ok else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# entry point


def build_parser():
    parser = argparse.ArgumentParser(
        prog="symkit",
        description="Symmetrization operators on convex bodies in dimensions 2 and 3.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_apply = sub.add_parser("apply", help="apply one symmetrization to a body file")
    p_apply.add_argument("--op", required=True)
    p_apply.add_argument("--subspace", default=None, metavar="basis=...")
    p_apply.add_argument("--param", action="append", default=[], metavar="k=v")
    p_apply.add_argument("--in", dest="infile", required=True)
    p_apply.add_argument("--out", dest="outfile", required=True)
    p_apply.set_defaults(func=cmd_apply)

    p_props = sub.add_parser("props", help="empirical property table for an operator")
    p_props.add_argument("--op", required=True)
    p_props.add_argument("--trials", type=int, default=DEFAULT_CONFIG.trials)
    p_props.add_argument("--seed", type=int, default=None)
    p_props.add_argument("--report", default=None, metavar="out.json")
    p_props.set_defaults(func=cmd_props)

    p_conv = sub.add_parser("converge", help="iterate a process along a subspace sequence")
    p_conv.add_argument("--process", required=True)
    p_conv.add_argument("--sequence", required=True, metavar="kind[:k=v,...]")
    p_conv.add_argument("--steps", type=int, required=True)
    p_conv.add_argument("--in", dest="infile", required=True)
    p_conv.add_argument("--csv", required=True)
    p_conv.add_argument("--svg", default=None)
    p_conv.add_argument("--cap", type=int, default=VERTEX_CAP)
    p_conv.set_defaults(func=cmd_converge)

    p_ana = sub.add_parser("analytic", help="closed-form cases with residual checks")
    p_ana.add_argument("case", choices=["blaschke-cone", "blaschke-prism", "schwarz-box"])
    p_ana.add_argument("--n", type=int, required=True)
    p_ana.add_argument("--a", type=float, default=1.0)
    p_ana.set_defaults(func=cmd_analytic)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "converge" and args.steps < 0:
            raise InvalidInput("--steps must be nonnegative")
        return args.func(args)
    except Unsupported as exc:
        sys.stderr.write("unsupported: %s\n" % exc)
        return EXIT_UNSUPPORTED
    except InvalidInput as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_INPUT
    except SymkitError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
