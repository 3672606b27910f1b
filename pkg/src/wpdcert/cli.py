"""Command-line front end: certification pipeline, axis/orbit tables, geometry queries.

Exit codes: 0 when every verdict in the output passes (or the command is a
pure query), 1 when a verdict fails, 2 on invalid parameters.  JSON is the
canonical format; CSV flattens the tabular sections.  Reals are printed with
12 significant digits, rationals exactly, so output is byte-stable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import certifier, hyperbolic, report
from .action import axis_classes, orbit_label
from .certifier import ParameterError
from .lattice import PointLabel, line_class, parse_label, to_json_dict


def _gather_verdicts(obj) -> list:
    found = []
    if isinstance(obj, dict):
        for key, value in obj.items():
            if key in ("ok", "passed", "match", "traverses") and isinstance(value, bool):
                found.append(value)
            else:
                found.extend(_gather_verdicts(value))
    elif isinstance(obj, list):
        for item in obj:
            found.extend(_gather_verdicts(item))
    return found


def _emit(payload: dict, rows, args) -> int:
    """Render JSON or CSV, write to --output or stdout, derive the exit code."""
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header, data = rows
        writer.writerow(header)
        writer.writerows(data)
        text = buf.getvalue()
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    verdicts = _gather_verdicts(payload)
    return 0 if all(verdicts) else 1


def _kv_rows(payload: dict, prefix=""):
    rows = []
    for key, value in payload.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            rows.extend(_kv_rows(value, prefix=name + "."))
        elif isinstance(value, list):
            rows.append((name, json.dumps(value)))
        else:
            rows.append((name, value))
    return rows


def _cmd_certify(args) -> int:
    rep = certifier.certify(args.n, depth=args.depth, p=args.prime, eps=args.eps, force_pure=args.pure)
    payload = rep.to_json_dict()
    rows_data = []
    for source, maps in (("symbolic", rep.fix_symbolic), ("bruteforce", rep.fix_bruteforce or [])):
        for f in maps:
            entry = report.fix_map_json(f)
            if "a" in entry:
                rows_data.append((source, entry["a"], entry["b"], entry["c"], entry["d"]))
            else:
                rows_data.append((source, entry["a_exponent"], "", entry["c_exponent"], ""))
    rows = (("source", "a", "b", "c", "d"), rows_data)
    return _emit(payload, rows, args)


def _cmd_axis(args) -> int:
    axis = axis_classes(args.n, args.depth)
    from .lattice import intersect

    payload = {
        "n": axis.n,
        "depth": axis.depth,
        "tail_norm_sq": report.fmt_rational(axis.tail_norm_sq),
        "b_plus_dot_b_minus": report.fmt_rational(intersect(axis.b_plus, axis.b_minus)),
        "b_plus_self": report.fmt_rational(intersect(axis.b_plus, axis.b_plus)),
        "w_norm_sq": report.fmt_rational(axis.w_norm_sq()),
        "b_plus": to_json_dict(axis.b_plus),
        "b_minus": to_json_dict(axis.b_minus),
        "r": to_json_dict(axis.r),
        "w_scaled": to_json_dict(axis.w_scaled),
    }
    rows_data = []
    for name in ("b_plus", "b_minus", "r", "w_scaled"):
        cls = payload[name]
        rows_data.append((name, "l", cls["ell"]))
        rows_data.extend((name, e["label"], e["coeff"]) for e in cls["exc"])
    return _emit(payload, (("class", "label", "coeff"), rows_data), args)


def _parse_orbit_label(text: str, n: int) -> PointLabel:
    text = text.strip()
    if "@" not in text and not text.startswith("anon"):
        text = f"{text}@n{n}"
    return parse_label(text)


def _cmd_orbit(args) -> int:
    label = _parse_orbit_label(args.label, args.n)
    direction = 1 if label.family == "q" else -1
    entries = []
    for i in range(1, args.iters + 1):
        image = orbit_label(args.n, label, direction * i)
        entries.append({"power": direction * i, "label": str(image), "index": image.index})
    payload = {"n": args.n, "start": str(label), "orbit": entries}
    rows = (("power", "label", "index"), [(e["power"], e["label"], e["index"]) for e in entries])
    return _emit(payload, rows, args)


def _cmd_geodesic(args) -> int:
    axis = axis_classes(args.n, args.depth)
    w_norm_sq = axis.w_norm_sq()
    cosh_sq = Fraction(2) / w_norm_sq
    dist = math.acosh(math.sqrt(float(cosh_sq)))
    payload = {
        "n": args.n,
        "depth": args.depth,
        "distance_l_to_axis": report.fmt_real(dist),
        "expected": report.fmt_real(certifier.ACOSH_SQRT2),
        "cosh_sq_exact": report.fmt_rational(cosh_sq),
    }
    if args.t is not None:
        ell = hyperbolic.as_vector(line_class())
        w_hat = hyperbolic.as_vector(axis.w_scaled) * (1.0 / math.sqrt(float(w_norm_sq) * 2.0))
        point = hyperbolic.geodesic_point(ell, w_hat, args.t)
        payload["point_at_t"] = {
            "t": report.fmt_real(args.t),
            "distance_from_l": report.fmt_real(hyperbolic.distance(ell, point)),
            "unit_norm_error": report.fmt_real(abs(hyperbolic.mdot(point, point) - 1.0)),
        }
    return _emit(payload, (("key", "value"), _kv_rows(payload)), args)


def _cmd_tube(args) -> int:
    modes = [args.z is not None, args.inner_lo is not None, args.exponents]
    if sum(modes) != 1:
        raise ParameterError("pick exactly one tube mode: --z, --inner-*, or --exponents")
    if args.exponents:
        needed = (args.eps, args.eta, args.length, args.zlo, args.zhi, args.w)
        if any(v is None for v in needed):
            raise ParameterError("--exponents needs --eps --eta --length --zlo --zhi --w")
        n_exp, m_exp = hyperbolic.wpd_exponents(args.eps, args.eta, args.length, args.zlo, args.zhi, args.w)
        payload = {
            "exponents": {"N": n_exp, "M": m_exp},
            "outer": {
                "lo": report.fmt_real(args.w - n_exp * args.length + args.eps),
                "hi": report.fmt_real(args.w + m_exp * args.length - args.eps),
                "end_radius": report.fmt_real(args.eps),
            },
            "verified": True,
        }
        return _emit(payload, (("key", "value"), _kv_rows(payload)), args)
    if None in (args.lo, args.hi, args.radius):
        raise ParameterError("tube queries need --lo --hi --radius")
    outer = hyperbolic.Tube(args.lo, args.hi, args.radius)
    if args.z is not None:
        payload = {
            "tube": {"lo": report.fmt_real(outer.lo), "hi": report.fmt_real(outer.hi), "end_radius": report.fmt_real(outer.end_radius)},
            "z": report.fmt_real(args.z),
            "radius": report.fmt_real(hyperbolic.tube_radius(outer, args.z)),
        }
        return _emit(payload, (("key", "value"), _kv_rows(payload)), args)
    if None in (args.inner_hi, args.inner_radius):
        raise ParameterError("traversal queries need --inner-lo --inner-hi --inner-radius")
    inner = hyperbolic.Tube(args.inner_lo, args.inner_hi, args.inner_radius)
    payload = {
        "outer": {"lo": report.fmt_real(outer.lo), "hi": report.fmt_real(outer.hi), "end_radius": report.fmt_real(outer.end_radius)},
        "inner": {"lo": report.fmt_real(inner.lo), "hi": report.fmt_real(inner.hi), "end_radius": report.fmt_real(inner.end_radius)},
        "traverses": hyperbolic.tube_traverses(outer, inner),
    }
    return _emit(payload, (("key", "value"), _kv_rows(payload)), args)


def _cmd_oracle(args) -> int:
    symbolic = certifier.fix_set_symbolic(args.n, args.prime)
    brute = certifier.fix_set_bruteforce(args.n, args.prime, force_pure=args.pure)
    match = certifier._as_tuples(symbolic) == certifier._as_tuples(brute)
    payload = {
        "n": args.n,
        "prime": args.prime,
        "kernel": "pure" if args.pure else certifier.kernel_name(),
        "oracle_count": args.prime ** 2 * (args.prime - 1) ** 2,
        "cardinality": len(brute),
        "symbolic": [report.fix_map_json(f) for f in symbolic],
        "bruteforce": [report.fix_map_json(f) for f in brute],
        "match": match,
    }
    rows_data = [
        (source, e["a"], e["b"], e["c"], e["d"])
        for source, maps in (("symbolic", payload["symbolic"]), ("bruteforce", payload["bruteforce"]))
        for e in maps
    ]
    return _emit(payload, (("source", "a", "b", "c", "d"), rows_data), args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wpdcert",
        description="Exact-arithmetic certifier for the discrete action along the axis of (x, y) -> (y, y^n - x).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, depth_default=20):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", default=None, help="write the report to this path instead of stdout")
        return p

    p = common(sub.add_parser("certify", help="run the full certification pipeline"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--depth", type=int, default=20)
    p.add_argument("--prime", type=int, default=None, help="prime p = 1 (mod n^2-1), p not dividing n; omit for symbolic mode")
    p.add_argument("--eps", type=float, default=None, help="override the maximal window tolerance")
    p.add_argument("--pure", action="store_true", help="force the pure-Python search kernel")
    p.set_defaults(func=_cmd_certify)

    p = common(sub.add_parser("axis", help="truncated axis classes and their exact pairings"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--depth", type=int, default=20)
    p.set_defaults(func=_cmd_axis)

    p = common(sub.add_parser("orbit", help="orbit of an exceptional label under the shift map"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--label", required=True, help="q0, p3, or a full label like q0@n2")
    p.add_argument("--iters", type=int, default=5)
    p.set_defaults(func=_cmd_orbit)

    p = common(sub.add_parser("geodesic", help="distance from the line class to the axis"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--depth", type=int, default=20)
    p.add_argument("--t", type=float, default=None, help="also report the geodesic point at arclength t")
    p.set_defaults(func=_cmd_geodesic)

    p = common(sub.add_parser("tube", help="tube radius, traversal, or displacement exponents"))
    p.add_argument("--lo", type=float)
    p.add_argument("--hi", type=float)
    p.add_argument("--radius", type=float)
    p.add_argument("--z", type=float, help="radius query at this arclength coordinate")
    p.add_argument("--inner-lo", dest="inner_lo", type=float)
    p.add_argument("--inner-hi", dest="inner_hi", type=float)
    p.add_argument("--inner-radius", dest="inner_radius", type=float)
    p.add_argument("--exponents", action="store_true", help="smallest powers whose tube traverses the inner tube")
    p.add_argument("--eps", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--length", type=float, help="translation length per power")
    p.add_argument("--zlo", type=float)
    p.add_argument("--zhi", type=float)
    p.add_argument("--w", type=float)
    p.set_defaults(func=_cmd_tube)

    p = common(sub.add_parser("oracle", help="brute-force Fix-set search vs the closed form"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prime", type=int, required=True, help="any prime not dividing n")
    p.add_argument("--pure", action="store_true", help="force the pure-Python search kernel")
    p.set_defaults(func=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, ValueError) as exc:
        sys.stderr.write(json.dumps({"error": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
