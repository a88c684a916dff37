"""Batch command-line front end.

Subcommands: check, analyze, family, geodesic-test.  All output is JSON on
stdout (deterministic bytes for fixed input and flags); timings are opt-in
because they are inherently non-reproducible.  Exit codes partition the
outcomes: 0 success, 1 input error, 2 not good, 3 no height structure when
one is required, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import os
import random
import sys
import time

import numpy as np

from . import __version__
from .cones import (
    ToricDiagram,
    canonical_reeb,
    enumerate_faces_3d,
    height1_points,
    is_good,
)
from .cy import compute_gamma, kernel_lattice, normalize_height
from .errors import DiagramError, NotNormalized, SasakitError
from .families import FAMILY_BUILDERS
from .potentials import (
    LinearTerm,
    RationalBump,
    canonical_potential,
    eval_potential,
    geodesic_equation_residual,
    legendre_roundtrip_error,
    reeb_invariance_residual,
    shifted_potential,
)
from .reeb import minimize_volume, truncated_polytope, volume
from .serialize import (
    PRECISION,
    FLOAT_FORMAT,
    diagram_to_dict,
    dumps,
    format_float,
    fraction_to_str,
    load_diagram,
)
from .topology import topology_report

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_GOOD = 2
EXIT_NO_CY = 3
EXIT_NUMERICAL = 4


def _tool_block() -> dict:
    return {
        "name": "sasakit",
        "version": __version__,
        "float_format": FLOAT_FORMAT,
        "precision": PRECISION,
    }


def _interior_sample(diagram: ToricDiagram) -> np.ndarray:
    poly = truncated_polytope(diagram, [float(x) for x in canonical_reeb(diagram)])
    cap = np.array([[float(c) for c in v] for v in poly.cap_vertices])
    return cap.mean(axis=0)


def _load_rank3(path: str) -> ToricDiagram:
    diagram, _ = load_diagram(path)
    if diagram.rank != 3:
        raise ValueError("the command line pipeline handles rank-3 diagrams only")
    return diagram


def cmd_check(args) -> int:
    try:
        diagram = _load_rank3(args.path)
    except (OSError, ValueError, DiagramError) as exc:
        print(dumps({"error": str(exc), "tool": _tool_block()}), end="")
        return EXIT_INPUT
    report = is_good(diagram)
    out = {
        "input": diagram_to_dict(diagram),
        "tool": _tool_block(),
        "good": report.good,
        "certificate": None
        if report.good
        else {"failing_face": list(report.failing_face), "reason": report.reason},
        "faces": {
            "facets": sum(1 for f in enumerate_faces_3d(diagram) if f.kind == "facet"),
            "edges": sum(1 for f in enumerate_faces_3d(diagram) if f.kind == "edge"),
        },
    }
    print(dumps(out), end="")
    return EXIT_OK if report.good else EXIT_NOT_GOOD


def _emit_svg(diagram: ToricDiagram, path: str) -> None:
    pts = height1_points(diagram)
    xs = [p for p, _ in pts]
    ys = [q for _, q in pts]
    lo_x, hi_x = min(xs) - 1, max(xs) + 1
    lo_y, hi_y = min(ys) - 1, max(ys) + 1
    scale = 40
    width = (hi_x - lo_x) * scale
    height = (hi_y - lo_y) * scale

    def sx(p):
        return (p - lo_x) * scale

    def sy(q):
        return (hi_y - q) * scale

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    for gx in range(lo_x, hi_x + 1):
        lines.append(
            f'<line x1="{sx(gx)}" y1="0" x2="{sx(gx)}" y2="{height}" '
            'stroke="#dddddd" stroke-width="1"/>'
        )
    for gy in range(lo_y, hi_y + 1):
        lines.append(
            f'<line x1="0" y1="{sy(gy)}" x2="{width}" y2="{sy(gy)}" '
            'stroke="#dddddd" stroke-width="1"/>'
        )
    poly = " ".join(f"{sx(p)},{sy(q)}" for p, q in pts)
    lines.append(
        f'<polygon points="{poly}" fill="#c8dcf0" fill-opacity="0.6" '
        'stroke="#003366" stroke-width="2"/>'
    )
    for p, q in pts:
        lines.append(f'<circle cx="{sx(p)}" cy="{sy(q)}" r="4" fill="#003366"/>')
        lines.append(
            f'<text x="{sx(p) + 6}" y="{sy(q) - 6}" font-size="12" '
            f'font-family="monospace">({p},{q})</text>'
        )
    lines.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_grid_csv(diagram: ToricDiagram, n: int, path: str) -> int:
    pot = canonical_potential(diagram)
    center = _interior_sample(diagram)
    rows = []
    for i in range(n):
        factor = 0.5 + (i / (n - 1) if n > 1 else 0.5)
        y = center * factor
        sample = eval_potential(pot, y)
        resid = legendre_roundtrip_error(pot, y)
        rows.append(
            [format_float(v) for v in sample.y]
            + [format_float(sample.G)]
            + [format_float(v) for v in sample.x]
            + [format_float(sample.F), format_float(resid)]
        )
    m1 = diagram.rank
    header = (
        [f"y{i + 1}" for i in range(m1)]
        + ["G"]
        + [f"x{i + 1}" for i in range(m1)]
        + ["F", "roundtrip_residual"]
    )
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    return len(rows)


def _write_scan_csv(diagram, result, directions, path) -> int:
    xi_star = np.array(result.xi.xi)
    rows = 0
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["ray", "tau"] + [f"xi{i+1}" for i in range(diagram.rank)] + ["volume"])
        for ridx, direction in enumerate(directions):
            v = np.asarray(direction, dtype=float)
            for k in range(41):
                tau = k / 40 * 0.95
                xi = (1 - tau) * xi_star + tau * v
                try:
                    vol = volume(diagram, tuple(float(x) for x in xi))
                except SasakitError:
                    break
                writer.writerow(
                    [ridx, format_float(tau)]
                    + [format_float(x) for x in xi]
                    + [format_float(vol)]
                )
                rows += 1
    return rows


def cmd_analyze(args) -> int:
    t_start = time.perf_counter()
    try:
        diagram = _load_rank3(args.path)
    except (OSError, ValueError, DiagramError) as exc:
        print(dumps({"error": str(exc), "tool": _tool_block()}), end="")
        return EXIT_INPUT

    stages: dict = {"validation": {"ok": True, "d": diagram.d, "rank": diagram.rank}}
    out = {"input": diagram_to_dict(diagram), "tool": _tool_block(), "stages": stages}

    good = is_good(diagram)
    stages["goodness"] = {
        "good": good.good,
        "certificate": None
        if good.good
        else {"failing_face": list(good.failing_face), "reason": good.reason},
    }
    if not good.good:
        print(dumps(out), end="")
        return EXIT_NOT_GOOD

    cy = compute_gamma(diagram)
    if args.cy:
        if cy is None:
            stages["cy"] = {"present": False}
        else:
            stage = {
                "present": True,
                "gamma": [fraction_to_str(g) for g in cy.gamma],
                "height": cy.height,
            }
            A, transformed = normalize_height(diagram, cy)
            stage["normalizer"] = [list(r) for r in A.entries]
            stage["normalized_normals"] = [list(v) for v in transformed.normals]
            kl = kernel_lattice(transformed, compute_gamma(transformed))
            stage["kernel_rank"] = kl.rank
            stage["component_group"] = list(kl.component_group)
            stage["row_sum_times_height_integral"] = kl.row_sum_times_height_integral
            stages["cy"] = stage

    if args.topo:
        stages["topology"] = topology_report(diagram).to_json_dict()

    if args.reeb:
        if cy is None:
            stages["reeb"] = {
                "error": "no toric diagram structure; c1(D) = 0 fails"
            }
            print(dumps(out), end="")
            return EXIT_NO_CY
        try:
            seed = int(os.environ.get("SASAKIT_SEED", "0"))
            rng = random.Random(seed)
            base = minimize_volume(diagram, cy, optimizer="newton")
            deviations = []
            for _ in range(2):
                offset = [rng.uniform(-0.5, 0.5) for _ in range(diagram.rank - 1)]
                other = minimize_volume(
                    diagram, cy, optimizer="newton", start_offset=offset
                )
                deviations.append(
                    max(abs(a - b) for a, b in zip(base.xi.xi, other.xi.xi))
                )
            if not base.converged:
                raise ArithmeticError("volume minimization did not converge")
            stages["reeb"] = {
                "xi": [format_float(x) for x in base.xi.xi],
                "volume": format_float(base.volume),
                "grad_norm": format_float(base.grad_norm),
                "iterations": base.iterations,
                "optimizer": base.optimizer,
                "starts": 3,
                "max_start_deviation": format_float(max(deviations)),
            }
            if args.scan:
                directions = [
                    [float(x) for x in raw.split(",")] for raw in args.scan
                ]
                scan_path = args.scan_out or "reeb_scan.csv"
                npts = _write_scan_csv(diagram, base, directions, scan_path)
                stages["reeb"]["scan_csv"] = scan_path
                stages["reeb"]["scan_points"] = npts
        except (SasakitError, ArithmeticError, np.linalg.LinAlgError) as exc:
            print(dumps({"error": f"numerical failure: {exc}", "tool": _tool_block()}), end="")
            return EXIT_NUMERICAL

    if args.potential_grid:
        grid_path = args.grid_out or "potential_grid.csv"
        try:
            npts = _write_grid_csv(diagram, args.potential_grid, grid_path)
        except SasakitError as exc:
            print(dumps({"error": f"numerical failure: {exc}", "tool": _tool_block()}), end="")
            return EXIT_NUMERICAL
        stages["potential_grid"] = {"csv": grid_path, "points": npts}

    if args.emit_svg:
        try:
            _emit_svg(diagram, args.emit_svg)
        except (NotNormalized, ValueError) as exc:
            print(dumps({"error": str(exc), "tool": _tool_block()}), end="")
            return EXIT_INPUT
        stages["svg"] = {"path": args.emit_svg}

    if args.timings:
        out["timing_seconds"] = time.perf_counter() - t_start
    print(dumps(out), end="")
    return EXIT_OK


def cmd_family(args) -> int:
    builder = FAMILY_BUILDERS.get(args.family)
    if builder is None:
        print(dumps({"error": f"unknown family {args.family!r}"}), end="")
        return EXIT_INPUT
    try:
        if args.family == "lens":
            if args.l is None:
                raise ValueError("lens requires --l")
            diagram = builder(args.l)
        elif args.family == "non-cy":
            if args.l is None:
                raise ValueError("non-cy requires --l")
            diagram = builder(args.l)
        elif args.family == "z5-lens":
            diagram = builder()
        else:
            if args.r is None or args.s is None:
                raise ValueError(f"{args.family} requires --r and --s")
            diagram = builder(args.r, args.s)
    except (ValueError, DiagramError) as exc:
        print(dumps({"error": str(exc)}), end="")
        return EXIT_INPUT
    print(dumps(diagram_to_dict(diagram)), end="")
    return EXIT_OK


def cmd_geodesic_test(args) -> int:
    try:
        diagram = _load_rank3(args.path)
    except (OSError, ValueError, DiagramError) as exc:
        print(dumps({"error": str(exc), "tool": _tool_block()}), end="")
        return EXIT_INPUT
    try:
        g0 = canonical_potential(diagram)
        bump = RationalBump(0, 1)
        y = _interior_sample(diagram)
        if y.sum() <= 0:
            raise ArithmeticError("sample point leaves the bump domain")
        g1 = shifted_potential(g0, bump)
        g1_linear = shifted_potential(g0, LinearTerm([0.25] * diagram.rank, 0.0))
        residuals = {}
        for h in (1e-2, 5e-3, 2.5e-3):
            residuals[format_float(h)] = format_float(
                abs(geodesic_equation_residual(g0, g1, y, t=args.t, h=h))
            )
        vals = [abs(geodesic_equation_residual(g0, g1, y, t=args.t, h=h))
                for h in (1e-2, 5e-3)]
        order = float(np.log2(vals[0] / vals[1])) if vals[1] > 0 else float("inf")
        out = {
            "input": diagram_to_dict(diagram),
            "tool": _tool_block(),
            "t": format_float(args.t),
            "point": [format_float(v) for v in y],
            "reeb_invariance_residual_bump": format_float(
                reeb_invariance_residual(bump, y)
            ),
            "geodesic_residuals": residuals,
            "convergence_order": format_float(order),
            "linear_shift_residual": format_float(
                abs(geodesic_equation_residual(g0, g1_linear, y, t=args.t, h=1e-3))
            ),
        }
    except (SasakitError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(dumps({"error": f"numerical failure: {exc}", "tool": _tool_block()}), end="")
        return EXIT_NUMERICAL
    print(dumps(out), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sasakit",
        description="Good cones, toric diagrams, topology invariants, and "
        "Reeb volume minimization from facet-normal data.",
    )
    parser.add_argument("--version", action="version", version=f"sasakit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="validate a diagram and decide goodness")
    p_check.add_argument("path")
    p_check.set_defaults(func=cmd_check)

    p_an = sub.add_parser("analyze", help="run the full pipeline on a diagram")
    p_an.add_argument("path")
    p_an.add_argument("--cy", action="store_true", help="height structure stage")
    p_an.add_argument("--topo", action="store_true", help="topology stage")
    p_an.add_argument("--reeb", action="store_true", help="volume minimization stage")
    p_an.add_argument("--potential-grid", type=int, metavar="N")
    p_an.add_argument("--grid-out", metavar="PATH")
    p_an.add_argument("--scan", action="append", metavar="X1,X2,X3")
    p_an.add_argument("--scan-out", metavar="PATH")
    p_an.add_argument("--emit-svg", metavar="PATH")
    p_an.add_argument("--timings", action="store_true")
    p_an.set_defaults(func=cmd_analyze)

    p_fam = sub.add_parser("family", help="emit a built-in diagram family member")
    p_fam.add_argument(
        "family", choices=sorted(FAMILY_BUILDERS) + ["help"], metavar="FAMILY"
    )
    p_fam.add_argument("--l", type=int)
    p_fam.add_argument("--r", type=int)
    p_fam.add_argument("--s", type=int)
    p_fam.set_defaults(func=cmd_family)

    p_geo = sub.add_parser(
        "geodesic-test", help="run the potential residual suite on a diagram"
    )
    p_geo.add_argument("path")
    p_geo.add_argument("--t", type=float, default=0.4)
    p_geo.set_defaults(func=cmd_geodesic_test)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
