"""Command-line front end.

Subcommands::

    qarea bound    --profile FILE --p X (--r X | --r-grid a:b:n) [--d0 X]
    qarea curve    --profile FILE --p X [--d0 X] (--n N | --r-grid a:b:n)
    qarea verify   [--map FILE] [--p X ...] [--r-grid a:b:n]
    qarea capacity --inner r --outer R --p X [--resolutions 32,64,128,256]
    qarea report   [--with-grid]

Common flags: ``--out FILE`` (default stdout), ``--format csv|json`` and
``--error-json``.  ``--r-grid a:b:n`` means ``n`` geometrically spaced radii
from ``a`` to ``b`` inclusive.

Exit codes: 0 success, 2 invalid input, 3 numerical failure, 4 a
verification or sandwich check failed.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bounds as B
from . import capacity as C
from .errors import NumericalError, ParameterError
from .maps import (
    Identity,
    LinearScaling,
    PowerStretch,
    extremal_map,
    image_disc_area,
    map_from_dict,
    map_to_dict,
)
from .profiles import Constant, Logarithmic, PowerLaw, load_profile, profile_from_map, profile_to_dict
from .report import records_to_csv, to_json, write_output

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL, EXIT_FAILED = 0, 2, 3, 4

BOUND_HEADER = ["profile", "p", "r", "d0", "bound", "corollary", "rel_diff", "match"]
VERIFY_HEADER = ["map", "p", "r", "bound", "actual", "ratio", "pass"]
CAPACITY_HEADER = ["N", "energy", "closed_form", "rel_err"]
SANDWICH_HEADER = ["r", "R", "p", "kruzhkov", "closed_form", "radial_1d", "radial_sampled", "pass"]

VERIFY_SLACK = 1e-9
COROLLARY_RTOL = 1e-8
SANDWICH_RTOL = 1e-12


def parse_r_grid(spec: str) -> np.ndarray:
    try:
        a, b, n = spec.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError:
        raise ParameterError(f"--r-grid expects a:b:n, got {spec!r}") from None
    if not (0 < a < b) or n < 1:
        raise ParameterError(f"--r-grid needs 0 < a < b and n >= 1, got {spec!r}")
    if n == 1:
        return np.array([a])
    grid = np.geomspace(a, b, n)
    grid[0], grid[-1] = a, b
    return grid


def _radii(args):
    if getattr(args, "r_grid", None):
        return [float(r) for r in parse_r_grid(args.r_grid)]
    if getattr(args, "r", None) is not None:
        return [args.r]
    raise ParameterError("give --r or --r-grid")


def _map_id(fmap):
    data = map_to_dict(fmap)
    inner = " ".join(f"{k}={v!r}" for k, v in data.items() if k != "type")
    return f"{data['type']}({inner})"


def corollary_value(profile, p, r):
    """Closed-form corollary for the analytic profile variants, else ``None``."""
    if isinstance(profile, Constant):
        return B.constant_bound(profile.q0, p, r)
    if isinstance(profile, PowerLaw) and profile.alpha >= 0:
        return B.power_law_bound(profile.q0, profile.alpha, p, r)
    if isinstance(profile, Logarithmic):
        return B.log_bound(profile.q0, p, r)
    return None


# ---------------------------------------------------------------------------


def cmd_bound(args):
    profile = load_profile(args.profile)
    records = []
    for r in _radii(args):
        params = B.BoundParams(args.p, r, args.d0)
        general = B.area_lower_bound(profile, params, fast_path=False)
        closed = corollary_value(profile, args.p, r)
        rel = None if closed is None else abs(general - closed) / closed
        records.append(
            {
                "profile": profile.profile_id,
                "p": float(args.p),
                "r": float(r),
                "d0": float(args.d0),
                "bound": general,
                "corollary": closed,
                "rel_diff": rel,
                "match": None if rel is None else bool(rel <= COROLLARY_RTOL),
            }
        )
    if args.format == "json":
        text = to_json({"command": "bound", "profile": profile_to_dict(profile), "rows": records})
    else:
        text = records_to_csv(records, BOUND_HEADER)
    return text, EXIT_OK


def cmd_curve(args):
    profile = load_profile(args.profile)
    radii = parse_r_grid(args.r_grid) if args.r_grid else None
    curve = B.bound_curve(profile, args.p, args.d0, args.n, radii=radii)
    text = curve.to_json() + "\n" if args.format == "json" else curve.to_csv()
    return text, EXIT_OK


def default_verify_maps():
    maps = [Identity()]
    maps += [LinearScaling(c) for c in (0.25, 0.5, 2.0)]
    maps += [PowerStretch(s) for s in (0.5, 1.5, 2.0, 3.0)]
    return maps


def _load_maps(path):
    with open(path) as fh:
        data = json.load(fh)
    items = data if isinstance(data, list) else [data]
    return [map_from_dict(item) for item in items]


def verify_rows(maps, ps, radii, *, corrupt=1.0, profile=None):
    """Compare each bound with the exact image area of the map it is paired with."""
    rows = []
    for fmap in maps:
        for p in ps:
            prof = profile or profile_from_map(fmap, p)
            for r in radii:
                bound = B.area_lower_bound(prof, B.BoundParams(p, r, 1.0)) * corrupt
                actual = image_disc_area(fmap, r)
                rows.append(
                    {
                        "map": _map_id(fmap),
                        "p": float(p),
                        "r": float(r),
                        "bound": bound,
                        "actual": actual,
                        "ratio": bound / actual,
                        "pass": bool(bound <= actual * (1 + VERIFY_SLACK)),
                    }
                )
    return rows


def cmd_verify(args):
    maps = _load_maps(args.map) if args.map else default_verify_maps()
    ps = args.p or [3.0, 4.0, 8.0]
    radii = parse_r_grid(args.r_grid) if args.r_grid else np.geomspace(0.05, 0.95, 20)
    profile = load_profile(args.profile) if args.profile else None
    rows = verify_rows(maps, ps, radii, corrupt=args.corrupt, profile=profile)
    ok = all(row["pass"] for row in rows)
    if args.format == "json":
        text = to_json({"command": "verify", "passed": ok, "rows": rows})
    else:
        text = records_to_csv(rows, VERIFY_HEADER)
    return text, EXIT_OK if ok else EXIT_FAILED


def sandwich_rows(rings, ps, n=4096):
    rows = []
    for inner, outer in rings:
        cond = C.RingCondenser(inner, outer)
        for p in ps:
            kr = C.ring_kruzhkov_bound(cond, p)
            closed = C.ring_capacity_closed(cond, p)
            radial = C.radial_capacity_1d(cond, p, n)
            sampled = C.radial_sampled_energy(cond, p, n)
            ok = bool(kr <= closed <= radial and radial <= sampled * (1 + SANDWICH_RTOL))
            rows.append(
                {
                    "r": float(inner),
                    "R": float(outer),
                    "p": float(p),
                    "kruzhkov": kr,
                    "closed_form": closed,
                    "radial_1d": radial,
                    "radial_sampled": sampled,
                    "pass": ok,
                }
            )
    return rows


SANDWICH_RINGS = [(r, R) for r in (0.5, 1.0) for R in (2.0, 4.0, 8.0)]
SANDWICH_PS = [3.0, 4.0, 8.0]


def refinement_rows(cond, p, resolutions, config=None):
    closed = C.ring_capacity_closed(cond, p)
    rows = []
    for N in resolutions:
        res = C.grid_capacity_2d(cond, p, N, config)
        rows.append(
            {
                "N": int(N),
                "energy": res.energy,
                "closed_form": closed,
                "rel_err": abs(res.energy - closed) / closed,
            }
        )
    return rows


def cmd_capacity(args):
    cond = C.RingCondenser(args.inner, args.outer)
    config = C.OptimizerConfig.load(args.optimizer) if args.optimizer else None
    try:
        resolutions = [int(x) for x in args.resolutions.split(",")]
    except ValueError:
        raise ParameterError(f"bad resolution list {args.resolutions!r}") from None
    table = refinement_rows(cond, args.p, resolutions, config)
    sandwich = sandwich_rows([(args.inner, args.outer)], [args.p], args.radial_n)
    if args.sandwich_grid:
        sandwich += sandwich_rows(SANDWICH_RINGS, SANDWICH_PS, args.radial_n)
    errs = [row["rel_err"] for row in table]
    monotone = all(b < a for a, b in zip(errs[:-1], errs[1:]))
    ok = all(row["pass"] for row in sandwich)
    if args.format == "json":
        text = to_json(
            {
                "command": "capacity",
                "refinement": table,
                "refinement_monotone": monotone,
                "sandwich": sandwich,
                "passed": ok,
            }
        )
    else:
        text = records_to_csv(table, CAPACITY_HEADER)
        verdict = "pass" if ok else "FAIL"
        sys.stderr.write(f"sandwich: {verdict} ({len(sandwich)} cases); refinement monotone: {monotone}\n")
    return text, EXIT_OK if ok else EXIT_FAILED


def cmd_report(args):
    radii = np.geomspace(0.05, 0.95, 20)
    verify = verify_rows(default_verify_maps(), [3.0, 4.0, 8.0], radii)
    sharp = []
    for q0 in (0.5, 1.0, 4.0):
        for p in (2.5, 3.0, 4.0, 8.0):
            f0 = extremal_map(q0, p)
            worst = max(
                abs(B.area_lower_bound(Constant(q0), B.BoundParams(p, r)) / image_disc_area(f0, r) - 1)
                for r in radii
            )
            sharp.append({"q0": q0, "p": p, "max_rel_err": worst, "pass": bool(worst <= 1e-10)})
    sandwich = sandwich_rows(SANDWICH_RINGS, SANDWICH_PS)
    payload = {
        "command": "report",
        "verify_passed": all(r["pass"] for r in verify),
        "verify_cases": len(verify),
        "sharpness": sharp,
        "sandwich": sandwich,
    }
    if args.with_grid:
        payload["refinement"] = refinement_rows(C.RingCondenser(1.0, 8.0), 4.0, [32, 64, 128, 256])
    ok = payload["verify_passed"] and all(s["pass"] for s in sharp) and all(s["pass"] for s in sandwich)
    payload["passed"] = ok
    return to_json(payload), EXIT_OK if ok else EXIT_FAILED


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="qarea", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, formats=("csv", "json")):
        sp.add_argument("--out", default=None, help="output file (default: stdout)")
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--error-json", action="store_true", help="report errors as JSON on stderr")

    sp = sub.add_parser("bound", help="evaluate the area lower bound")
    sp.add_argument("--profile", required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--r", type=float)
    sp.add_argument("--r-grid")
    sp.add_argument("--d0", type=float, default=1.0)
    common(sp)
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("curve", help="bound as a function of r")
    sp.add_argument("--profile", required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--d0", type=float, default=1.0)
    sp.add_argument("--n", type=int, default=50)
    sp.add_argument("--r-grid")
    common(sp)
    sp.set_defaults(func=cmd_curve)

    sp = sub.add_parser("verify", help="check bounds against radial maps")
    sp.add_argument("--map", help="JSON map spec, or a list of them")
    sp.add_argument("--profile", help="use this profile instead of the map's own K_Ip")
    sp.add_argument("--p", type=float, action="append")
    sp.add_argument("--r-grid")
    sp.add_argument("--corrupt", type=float, default=1.0, help=argparse.SUPPRESS)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("capacity", help="ring capacity refinement study")
    sp.add_argument("--inner", type=float, default=1.0)
    sp.add_argument("--outer", type=float, default=8.0)
    sp.add_argument("--p", type=float, default=4.0)
    sp.add_argument("--resolutions", default="32,64,128,256")
    sp.add_argument("--radial-n", type=int, default=4096)
    sp.add_argument("--optimizer", help="optimizer config JSON")
    sp.add_argument("--sandwich-grid", action="store_true", help="also check the default ring grid")
    common(sp)
    sp.set_defaults(func=cmd_capacity)

    sp = sub.add_parser("report", help="summary of all verification checks")
    sp.add_argument("--with-grid", action="store_true", help="include the 2D refinement study")
    common(sp, formats=("json",))
    sp.set_defaults(func=cmd_report)
    return parser


def _fail(args, exc, code):
    if getattr(args, "error_json", False):
        payload = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
        sys.stderr.write(json.dumps(payload) + "\n")
    else:
        sys.stderr.write(f"qarea: error: {exc}\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = args.func(args)
    except (ParameterError, OSError, json.JSONDecodeError) as exc:
        return _fail(args, exc, EXIT_INVALID)
    except (NumericalError, ArithmeticError) as exc:
        return _fail(args, exc, EXIT_NUMERICAL)
    except (ValueError, TypeError) as exc:
        return _fail(args, exc, EXIT_INVALID)
    write_output(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
