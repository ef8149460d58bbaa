"""Command-line interface.

Subcommands: geometry, density, table, congruent, family, planar-scan.
Exit codes: 0 ok, 2 inadmissible parameters, 3 infeasible covering,
4 numerical failure.  Floats print with 6 significant digits; identical
invocations produce byte-identical output.
"""

import argparse
import csv
import io
import json
import sys

from . import planar as _planar
from .covering import (
    EdgeId,
    NoFeasiblePoint,
    NoRoot,
    config_at,
    density,
    minimize_noncongruent,
    optimize_family_u37,
    solve_congruent,
)
from .lorentz import GeometryError
from .orthoscheme import InadmissibleParameters, build

EXIT_OK = 0
EXIT_INADMISSIBLE = 2
EXIT_INFEASIBLE = 3
EXIT_NUMERICAL = 4

CSV_HEADER = ["type", "delta", "h1", "h2", "t", "feasible"]

TABLE_ROWS = {
    "noncongruent-QA2": [(3, 7, 3), (3, 8, 3), (4, 5, 4), (4, 6, 4), (5, 4, 5),
                         (5, 5, 4), (6, 4, 5), (6, 5, 4), (7, 3, 7), (7, 4, 5)],
    "noncongruent-A1A2": [(3, 7, 3), (3, 8, 3), (4, 5, 4), (4, 5, 5), (5, 4, 5),
                          (5, 4, 6), (6, 4, 5), (6, 4, 6), (7, 3, 7), (7, 3, 8)],
    "congruent": [(3, 7, 3), (3, 8, 3), (4, 5, 4), (4, 6, 4), (5, 4, 5),
                  (5, 4, 6), (6, 4, 5), (6, 4, 6), (7, 3, 7), (7, 3, 8)],
}


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def _row_label(u, v, w) -> str:
    return f"F{u:g}^({v:g},{w:g})"


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _round_floats(obj, digits=6):
    """Round floats for stable JSON output at table precision."""
    if isinstance(obj, float):
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v, digits) for v in obj]
    return obj


def _result_json(result) -> str:
    return json.dumps(_round_floats(result.to_dict()), indent=2, sort_keys=True) + "\n"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _result_csv_row(label, result):
    c = result.config
    return [label, _fmt(result.density), _fmt(c.h1), _fmt(c.h2), _fmt(c.t),
            "yes" if c.feasible else "no"]


def cmd_geometry(args) -> int:
    o = build(args.u, args.v, args.w)
    _emit(json.dumps(o.to_dict(), indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_density(args) -> int:
    o = build(args.u, args.v, args.w)
    edge = EdgeId[args.edge]
    if args.t is not None:
        result = density(o, config_at(o, edge, args.t))
    else:
        result = minimize_noncongruent(o, edge)
    if args.format == "json":
        _emit(_result_json(result), args.out)
    else:
        _emit(_csv_text(CSV_HEADER,
                        [_result_csv_row(_row_label(args.u, args.v, args.w),
                                         result)]), args.out)
    if not result.config.feasible:
        print("covering infeasible at the requested contact", file=sys.stderr)
        return EXIT_INFEASIBLE
    return EXIT_OK


def cmd_table(args) -> int:
    rows = TABLE_ROWS[args.which]
    records = []
    for (u, v, w) in rows:
        o = build(u, v, w)
        if args.which == "congruent":
            result = solve_congruent(o)
        elif args.which == "noncongruent-QA2":
            result = minimize_noncongruent(o, EdgeId.QA2)
        else:
            result = minimize_noncongruent(o, EdgeId.A1A2)
        records.append((_row_label(u, v, w), result))
    if args.format == "json":
        payload = [dict(type=label, **_round_floats(res.to_dict()))
                   for label, res in records]
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    else:
        _emit(_csv_text(CSV_HEADER,
                        [_result_csv_row(label, res)
                         for label, res in records]), args.out)
    return EXIT_OK


def cmd_congruent(args) -> int:
    o = build(args.u, args.v, args.w)
    result = solve_congruent(o)
    if args.format == "json":
        _emit(_result_json(result), args.out)
    else:
        _emit(_csv_text(CSV_HEADER,
                        [_result_csv_row(_row_label(args.u, args.v, args.w),
                                         result)]), args.out)
    return EXIT_OK if result.config.feasible else EXIT_INFEASIBLE


def cmd_family(args) -> int:
    if not (6.0 < args.u_lo < args.u_hi < 7.0):
        print(f"family range ({args.u_lo}, {args.u_hi}) must lie inside (6, 7)",
              file=sys.stderr)
        return EXIT_INADMISSIBLE
    import numpy as np
    rows = []
    for u in np.linspace(args.u_lo, args.u_hi, args.samples):
        o = build(float(u), 3, 7)
        res = minimize_noncongruent(o, EdgeId.A1A2)
        c = res.config
        rows.append([_fmt(float(u)), _fmt(res.density), _fmt(c.h1),
                     _fmt(c.h2), _fmt(c.t)])
    fam = optimize_family_u37(args.u_lo, args.u_hi)
    c = fam.result.config
    summary = (f"# optimum: u={_fmt(fam.u)} delta={_fmt(fam.result.density)} "
               f"h1={_fmt(c.h1)} h2={_fmt(c.h2)} t={_fmt(c.t)} "
               f"[non-extendable tiling]")
    _emit(_csv_text(["u", "delta", "h1", "h2", "t"], rows) + summary + "\n",
          args.out)
    return EXIT_OK


def cmd_planar_scan(args) -> int:
    if args.pairs:
        path = []
        for chunk in args.pairs.split(";"):
            a_str, b_str = chunk.split(":")
            path.append((float(a_str), float(b_str)))
    else:
        path = _planar.standard_scan_path(args.k)
    scan = _planar.limit_scan(path)
    rows = [[_fmt(x) for x in (p.a, p.b, p.h1, p.h2, p.pentagon_area,
                               p.delta, p.gap_to_limit)]
            for p in scan.points]
    summary = (f"# limit sqrt(12)/pi = {_fmt(_planar.COVERING_LIMIT_2D)}, "
               f"monotone_decreasing={scan.monotone_decreasing}, "
               f"terminal_gap={_fmt(scan.terminal_gap)}")
    _emit(_csv_text(["a", "b", "h1", "h2", "pentagon_area", "delta",
                     "gap_to_limit"], rows) + summary + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hypercover",
        description="Hyperball/hypercycle covering densities over doubly "
                    "truncated Coxeter orthoschemes")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_uvw(p):
        p.add_argument("--u", type=float, required=True)
        p.add_argument("--v", type=float, required=True)
        p.add_argument("--w", type=float, required=True)

    def add_io(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None)

    p = sub.add_parser("geometry", help="orthoscheme realization as JSON")
    add_uvw(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_geometry)

    p = sub.add_parser("density", help="covering density at or minimized over t")
    add_uvw(p)
    p.add_argument("--edge", choices=[e.name for e in EdgeId], default="A1A2")
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--tol", type=float, default=1e-12,
                   help="golden-section refinement tolerance")
    add_io(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("table", help="one of the three ten-row density tables")
    p.add_argument("--which", choices=sorted(TABLE_ROWS), required=True)
    add_io(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("congruent", help="equal-height contact on A1A2")
    add_uvw(p)
    add_io(p)
    p.set_defaults(func=cmd_congruent)

    p = sub.add_parser("family", help="{u,3,7} density curve and optimum over u")
    p.add_argument("--u-lo", type=float, required=True)
    p.add_argument("--u-hi", type=float, required=True)
    p.add_argument("--samples", type=int, default=19)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("planar-scan",
                       help="hypercycle covering densities approaching sqrt(12)/pi")
    p.add_argument("--k", type=int, default=4,
                   help="number of standard path points a=1+400^-k, b=10^k")
    p.add_argument("--pairs", default=None,
                   help="explicit path 'a:b;a:b;...' overriding --k")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_planar_scan)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InadmissibleParameters as ex:
        print(f"inadmissible parameters: {ex}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except (NoFeasiblePoint, _planar.NotACovering, _planar.NoIntersection,
            NoRoot) as ex:
        print(f"infeasible covering: {ex}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (GeometryError, FloatingPointError) as ex:
        print(f"numerical failure: {ex}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
