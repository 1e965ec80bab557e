"""Command-line interface: compute functionals, sweep frames, reproduce cases.

Exit codes: 0 success; 2 configuration error (bad flags, unknown names,
malformed spec files); 3 numerical failure during evaluation, with the
failing chart point in the report; 4 reproduction run with at least one
non-documented failing reference.

Output records are emitted as JSON (sorted keys), CSV (fixed column
order), or plain text.  With identical configuration, seed, and
``--no-timing``, output bytes are identical regardless of worker count.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time

import numpy as np

from . import __version__
from .errors import ChartSingularityError, CurvfunError, NonFiniteError, SingularMetricError
from .frames import rotate_frame
from .functionals import k_discrete
from .quadrature import FUNCTIONALS, Axis, Grid, integrate_functional
from .reproduce import CASE_NAMES, run_case
from .zoo import MANIFOLD_NAMES, load_manifold_file, manifold_by_name

GROUP_NAMES = ("su3", "so4")

_NORMALIZATION = {
    "gamma_d": "C_d = 1/(d!(4pi)^d) times the permutation sum "
    "(equivalently matching sum / (2pi)^d)",
    "gamma_mc": "(2d)! C_d times the Haar average of the consecutive-pair product",
    "gbc": "2^-d C_d times the signed double-permutation sum",
    "hilbert": "sum of sectional curvatures over ordered frame pairs (scalar curvature)",
    "volume": "Riemannian volume element sqrt(det g)",
}


class ConfigError(Exception):
    pass


def _versions():
    return {
        "package": __version__,
        "python": "%d.%d.%d" % sys.version_info[:3],
        "numpy": np.__version__,
    }


def _parse_params(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise ConfigError("--param expects key=value, got %r" % item)
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _parse_grid(text, dim):
    ns = [int(v) for v in text.split(",")]
    if len(ns) == 1:
        ns = ns * dim
    if len(ns) != dim:
        raise ConfigError("--grid needs 1 or %d sizes, got %d" % (dim, len(ns)))
    if any(n < 1 for n in ns):
        raise ConfigError("grid sizes must be positive")
    return ns


def _resolve_manifold(args):
    if args.spec_file:
        return load_manifold_file(args.spec_file)
    if not args.manifold:
        raise ConfigError("one of --manifold or --spec-file is required")
    params = _parse_params(args.param)
    return manifold_by_name(args.manifold, params)


def _frame_config(args, dim):
    if args.frame == "coordinate":
        return "coordinate", None, None
    if args.frame == "haar":
        return "haar", None, None
    if args.frame == "rotated":
        if not args.rotate_plane:
            raise ConfigError("--frame rotated requires --rotate-plane a,b")
        try:
            a, b = (int(v) for v in args.rotate_plane.split(","))
        except ValueError:
            raise ConfigError("--rotate-plane expects two comma-separated indices") from None
        if not (1 <= a <= dim and 1 <= b <= dim) or a == b:
            raise ConfigError("rotation plane indices must be distinct and in 1..%d" % dim)
        angle = float(args.rotate_angle)
        rot = rotate_frame(np.eye(dim), a - 1, b - 1, angle)
        return "rotated", (a, b), (angle, rot)
    raise ConfigError("unknown frame strategy %r" % args.frame)


def _emit(payload, fmt, out_path, csv_rows=None, text_lines=None):
    """Serialize a payload; csv_rows/text_lines override the non-JSON forms."""
    if fmt == "json":
        body = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in csv_rows:
            writer.writerow(row)
        body = buf.getvalue()
    else:
        body = "\n".join(text_lines) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


# -- compute ----------------------------------------------------------------------


def _compute_group(args):
    from . import liegroups as LG

    alg = LG.builtin_algebra(args.manifold)
    if args.functional != "gamma_d":
        raise ConfigError("group manifolds support --functional gamma_d only")
    strategy, plane, rot = _frame_config(args, alg.dim)
    if strategy == "haar":
        from .frames import haar_orthogonal, point_rng

        alg = LG.rotate_algebra(alg, haar_orthogonal(alg.dim, point_rng(args.seed, 0)))
    elif strategy == "rotated":
        alg = LG.rotate_algebra(alg, rot[1])
    k = LG.biinvariant_sectional(alg)
    density = float(k_discrete(k))
    volume = {"su3": math.pi**5, "so4": None}[args.manifold]
    value = density * volume if volume is not None else (0.0 if density == 0 else None)
    if value is None:
        raise ConfigError("no volume on record for %r; density reported alone" % args.manifold)
    record = {
        "command": "compute",
        "manifold": args.manifold,
        "functional": args.functional,
        "normalization": _NORMALIZATION[args.functional] + "; curvature constant over the group",
        "frame": {"strategy": strategy, "plane": plane, "angle": rot[0] if rot else None},
        "grid": None,
        "n_points": 1,
        "seed": args.seed,
        "samples": None,
        "value": value,
        "error_estimate": 0.0,
        "stderr": None,
        "k_d_density": density,
        "group_volume": volume,
        "versions": _versions(),
    }
    if args.manifold == "su3" and strategy == "coordinate":
        from .liegroups import pairing_sums_exact

        ms, ps = pairing_sums_exact(alg)
        record["exact"] = {
            "matching_sum": str(ms),
            "permutation_sum": str(ps),
            "gamma_closed_form": "117*pi/2^17",
        }
    return record


def cmd_compute(args):
    t0 = time.monotonic()
    if args.manifold in GROUP_NAMES and not args.spec_file:
        record = _compute_group(args)
    else:
        spec = _resolve_manifold(args)
        if args.functional not in FUNCTIONALS:
            raise ConfigError("unknown functional %r" % args.functional)
        if args.functional in ("gamma_d", "gamma_mc", "gbc") and spec.dim % 2 != 0:
            raise ConfigError("%s needs an even-dimensional manifold" % args.functional)
        grid = spec.default_grid
        if args.grid:
            ns = _parse_grid(args.grid, spec.dim)
            grid = Grid(
                tuple(
                    Axis(a.lo, a.hi, n, a.periodic) for a, n in zip(grid.axes, ns)
                )
            )
        strategy, plane, rot = _frame_config(args, spec.dim)
        frame = {"coordinate": "coordinate", "haar": "haar"}.get(strategy)
        if frame is None:
            frame = rot[1]
        result = integrate_functional(
            spec.metric,
            grid,
            functional=args.functional,
            frame=frame,
            seed=args.seed,
            nsamples=args.samples,
            workers=args.workers,
        )
        record = {
            "command": "compute",
            "manifold": spec.name,
            "functional": args.functional,
            "normalization": _NORMALIZATION[args.functional],
            "frame": {"strategy": strategy, "plane": plane,
                      "angle": rot[0] if rot else None},
            "grid": grid.describe(),
            "n_points": result.n_points,
            "seed": args.seed,
            "samples": args.samples if args.functional == "gamma_mc" else None,
            "value": result.value,
            "error_estimate": result.error_estimate,
            "stderr": result.stderr,
            "versions": _versions(),
        }
        if args.functional == "gamma_d" and "k_d" in spec.oracles and "dV" in spec.oracles:
            from .quadrature import integrate

            oracle_value, _ = integrate(
                lambda p, i: (spec.oracles["k_d"](p) * spec.oracles["dV"](p), None),
                grid,
                workers=args.workers,
            )
            record["oracle_value"] = oracle_value
        if spec.notes:
            record["notes"] = spec.notes
    if not args.no_timing:
        record["wall_time"] = time.monotonic() - t0
    cols = ["command", "manifold", "functional", "frame", "value", "error_estimate",
            "stderr", "n_points", "seed", "wall_time"]
    row = [record.get("command"), record.get("manifold"), record.get("functional"),
           record["frame"]["strategy"], record.get("value"), record.get("error_estimate"),
           record.get("stderr"), record.get("n_points"), record.get("seed"),
           record.get("wall_time")]
    text = ["%s = %r" % (k, record[k]) for k in sorted(record)]
    _emit(record, args.format, args.out, csv_rows=[cols, row], text_lines=text)
    return 0


# -- frame sweep --------------------------------------------------------------------


def cmd_frame_sweep(args):
    t0 = time.monotonic()
    spec = _resolve_manifold(args)
    if args.angles < 2:
        raise ConfigError("--angles must be at least 2")
    try:
        a, b = (int(v) for v in args.plane.split(","))
    except ValueError:
        raise ConfigError("--plane expects two comma-separated 1-based indices") from None
    if not (1 <= a <= spec.dim and 1 <= b <= spec.dim) or a == b:
        raise ConfigError("plane indices must be distinct and in 1..%d" % spec.dim)
    grid = spec.default_grid
    if args.grid:
        ns = _parse_grid(args.grid, spec.dim)
        grid = Grid(tuple(Axis(ax.lo, ax.hi, n, ax.periodic) for ax, n in zip(grid.axes, ns)))
    angles = np.linspace(0.0, math.pi / 2, args.angles)
    rows = []
    for angle in angles:
        rot = rotate_frame(np.eye(spec.dim), a - 1, b - 1, float(angle))
        result = integrate_functional(
            spec.metric, grid, functional=args.functional, frame=rot,
            seed=args.seed, workers=args.workers, with_error_estimate=False,
        )
        rows.append({"angle": float(angle), "value": result.value})
    payload = {
        "command": "frame-sweep",
        "manifold": spec.name,
        "functional": args.functional,
        "plane": [a, b],
        "normalization": _NORMALIZATION[args.functional],
        "frame": {"strategy": "rotated-sweep", "plane": [a, b], "angle": None},
        "grid": grid.describe(),
        "seed": args.seed,
        "rows": rows,
        "versions": _versions(),
    }
    if not args.no_timing:
        payload["wall_time"] = time.monotonic() - t0
    csv_rows = [["angle", "value"]] + [[r["angle"], r["value"]] for r in rows]
    text = ["angle=%.6f value=%.12g" % (r["angle"], r["value"]) for r in rows]
    _emit(payload, args.format, args.out, csv_rows=csv_rows, text_lines=text)
    return 0


# -- reproduce -----------------------------------------------------------------------


def cmd_reproduce(args):
    cases = list(CASE_NAMES) if args.case == "all" else [args.case]
    for c in cases:
        if c not in CASE_NAMES:
            raise ConfigError("unknown case %r (cases: %s, all)" % (c, ", ".join(CASE_NAMES)))
    all_results = []
    for c in cases:
        all_results.extend(run_case(c, workers=args.workers))
    records = [r.to_record() for r in all_results]
    payload = {"command": "reproduce", "cases": cases, "results": records,
               "versions": _versions()}
    cols = ["case", "quantity", "expected", "measured", "tolerance", "source",
            "verdict", "note"]
    csv_rows = [cols] + [[rec[k] for k in cols] for rec in records]
    text = []
    for rec in records:
        text.append("[%s] %-55s %-22s expected=%s measured=%s (%s)" % (
            rec["verdict"], rec["case"] + ": " + rec["quantity"], rec["source"],
            rec["expected"], rec["measured"],
            "exact" if rec["tolerance"] is None else "tol=%g" % rec["tolerance"]))
        if rec["note"]:
            text.append("    note: %s" % rec["note"])
    failed = [r for r in all_results if r.verdict == "FAIL"]
    text.append("%d checks, %d failed, %d documented discrepancies" % (
        len(all_results), len(failed),
        sum(1 for r in all_results if r.verdict == "DISCREPANCY-DOCUMENTED")))
    _emit(payload, args.format, args.out, csv_rows=csv_rows, text_lines=text)
    return 4 if failed else 0


# -- entry point ---------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(
        prog="curvfun",
        description="Curvature functionals on charts, Lie groups, and complexes.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--manifold", choices=sorted(MANIFOLD_NAMES + GROUP_NAMES))
        sp.add_argument("--spec-file", help="declarative JSON chart definition")
        sp.add_argument("--param", action="append", metavar="KEY=VALUE",
                        help="manifold parameter (repeatable), e.g. u=cos(x1)+cos(x2)")
        sp.add_argument("--functional", default="gamma_d", choices=sorted(FUNCTIONALS))
        sp.add_argument("--grid", help="per-axis node counts, e.g. 17,17,17,16 (or one size)")
        sp.add_argument("--samples", type=int, default=64,
                        help="Monte Carlo frame samples per node (gamma_mc)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--format", default="json", choices=("json", "csv", "text"))
        sp.add_argument("--out", help="write output to this path instead of stdout")
        sp.add_argument("--no-timing", action="store_true",
                        help="omit wall_time for byte-reproducible output")

    pc = sub.add_parser("compute", help="evaluate one functional on one manifold")
    common(pc)
    pc.add_argument("--frame", default="coordinate", choices=("coordinate", "rotated", "haar"))
    pc.add_argument("--rotate-plane", metavar="A,B", help="1-based frame indices")
    pc.add_argument("--rotate-angle", type=float, default=0.0)
    pc.set_defaults(fn=cmd_compute)

    ps = sub.add_parser("frame-sweep", help="sweep a rotation angle in one frame plane")
    common(ps)
    ps.add_argument("--plane", required=True, metavar="A,B", help="1-based frame indices")
    ps.add_argument("--angles", type=int, default=9, help="number of angles in [0, pi/2]")
    ps.set_defaults(fn=cmd_frame_sweep)

    pr = sub.add_parser("reproduce", help="re-derive published reference values")
    pr.add_argument("case", help="one of %s, or 'all'" % ", ".join(CASE_NAMES))
    pr.add_argument("--workers", type=int, default=1)
    pr.add_argument("--format", default="text", choices=("json", "csv", "text"))
    pr.add_argument("--out")
    pr.set_defaults(fn=cmd_reproduce)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad flags already; normalize other exits
        return int(e.code) if e.code else 0
    try:
        return args.fn(args)
    except ConfigError as e:
        print("configuration error: %s" % e, file=sys.stderr)
        return 2
    except ValueError as e:
        print("configuration error: %s" % e, file=sys.stderr)
        return 2
    except ChartSingularityError as e:
        report = {"error": str(e), "failing_point": list(map(float, e.point))}
        print(json.dumps(report, sort_keys=True), file=sys.stderr)
        return 3
    except (NonFiniteError, SingularMetricError) as e:
        print(json.dumps({"error": str(e)}, sort_keys=True), file=sys.stderr)
        return 3
    except CurvfunError as e:
        print("error: %s" % e, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
