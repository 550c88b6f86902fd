"""Command line entry point: dim, enumerate, polygon, verify, conjecture.

Exit codes: 0 success, 1 verification failure, 2 kappa mismatch, 3 Mazur
inequality fails, 4 invalid input, 5 internal disagreement.
"""

from __future__ import annotations

import argparse
import sys
import time

from .components import conjecture_report
from .coweights import GCocharacter, SuperbasicDatum
from .enumeration import check_instance, enumerate_charts
from .errors import AdlvError, InternalDisagreement, InvalidInput, KappaMismatch
from .io import (
    dump_charts,
    format_rational,
    parse_int_vector,
    parse_vector,
    polygon_svg,
    report_json,
    text_table,
)
from .levi import GeneralClassDatum, general_dim
from .polygons import pairing, superbasic_dim_formula
from .suites import run_suite


def _add_instance(p: argparse.ArgumentParser):
    p.add_argument("--d", type=int, required=True, help="degree of the unramified extension")
    p.add_argument("--h", type=int, required=True, help="rank")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--m", type=int, help="total valuation of b (slopes default to the row sums of mu)")
    g.add_argument("--slopes", help="comma separated m_tau, one per Galois component")
    p.add_argument("--mu", required=True, help="row-major comma separated entries of mu (d*h integers)")
    p.add_argument("--json", action="store_true", help="print the report as JSON")


def _instance(args) -> tuple:
    mu = GCocharacter.from_flat(parse_int_vector(args.mu), args.d, args.h)
    if args.slopes is not None:
        datum = SuperbasicDatum(args.d, args.h, parse_int_vector(args.slopes))
    else:
        datum = SuperbasicDatum.for_mu(mu)
        if args.m is not None and args.m != datum.m:
            raise KappaMismatch(f"sum of mu is {datum.m}, but m = {args.m}")
    return mu, datum


def _emit(args, payload: dict, table: str):
    if getattr(args, "json", False):
        print(report_json(payload))
    else:
        print(table)


def cmd_dim(args) -> int:
    t = time.perf_counter()
    if args.newton is not None:
        mu = GCocharacter.from_flat(parse_int_vector(args.mu), args.d, args.h)
        nu = parse_vector(args.newton)
        total = args.d * sum(nu)
        if total.denominator != 1 or (args.m is not None and args.m != total):
            raise InvalidInput("--m must equal d times the sum of the Newton point")
        kappa = int(total)
        gd = GeneralClassDatum(args.d, args.h, nu, kappa)
        if args.method != "formula":
            raise InvalidInput("enumeration only handles superbasic classes; use --method formula with --newton")
        results = {"formula": general_dim(mu, gd)}
        inputs = {"d": args.d, "h": args.h, "mu": mu, "newton": [format_rational(x) for x in gd.newton],
                  "kappa": kappa}
    else:
        mu, datum = _instance(args)
        if args.method == "formula":
            if not mu.is_dominant():
                raise InvalidInput("mu must be dominant (rows weakly increasing)")
        else:
            check_instance(mu, datum)
        results = {}
        if args.method in ("formula", "both"):
            results["formula"] = superbasic_dim_formula(mu, datum)
        if args.method in ("enumerate", "both"):
            results["enumerate"] = enumerate_charts(mu, datum).max_dim
        inputs = {"d": args.d, "h": args.h, "mu": mu, "slopes": list(datum.slopes)}
    values = set(results.values())
    if len(values) != 1:
        raise InternalDisagreement(f"methods disagree: {results}")
    dim = values.pop()
    payload = {"command": "dim", "inputs": inputs, "results": {"dimension": dim, **results},
               "checks": {"agreement": True}, "timing": {"seconds": round(time.perf_counter() - t, 3)}}
    table = text_table([[k, v] for k, v in results.items()], ["method", "dimension"])
    if args.json:
        print(report_json(payload))
    else:
        print(dim)
        if len(results) > 1:
            print(table)
    return 0


def cmd_enumerate(args) -> int:
    mu, datum = _instance(args)
    res = enumerate_charts(mu, datum)
    charts = sorted(res.charts, key=lambda e: e.sort_key())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            n = dump_charts(charts, fh)
        print(f"{n} charts written to {args.out}; dimension {res.max_dim}, {res.top_count} of top dimension",
              file=sys.stderr)
    else:
        dump_charts(charts, sys.stdout)
    return 0


def cmd_polygon(args) -> int:
    nu1, nu2 = parse_vector(args.nu1), parse_vector(args.nu2)
    if len(nu1) != len(nu2):
        raise InvalidInput("nu1 and nu2 have different lengths")
    svg, pts = polygon_svg(nu1, nu2)
    p = pairing(nu1, nu2)
    if p != len(pts):
        raise InternalDisagreement(f"pairing {p} differs from the lattice count {len(pts)}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    print(f"points: {len(pts)}", file=sys.stderr if not args.out else sys.stdout)
    return 0


def cmd_verify(args) -> int:
    results = run_suite(args.suite, args.grid)
    failed = False
    for r in results:
        print(r.line(), flush=True)
        for f in r.failures[:5]:
            print(f"    {f}")
        failed |= not r.passed and not r.report_only
    print("FAILED" if failed else "ALL PASSED")
    return 1 if failed else 0


def cmd_conjecture(args) -> int:
    t = time.perf_counter()
    mu, datum = _instance(args)
    check_instance(mu, datum)
    rep = conjecture_report(mu, datum)
    payload = {"command": "conjecture", **rep.as_dict(),
               "tilde_mu_image": [[[list(r) for r in k.rows], v]
                                  for k, v in sorted(rep.image.items(), key=lambda kv: kv[0].rows)],
               "timing": {"seconds": round(time.perf_counter() - t, 3)}}
    rows = [[k, v] for k, v in rep.as_dict().items() if k not in ("mu", "slopes", "match_flags")]
    rows += [[k, v] for k, v in rep.match_flags.items()]
    table = text_table(rows, ["quantity", "value"])
    table += "\n\ntilde_mu image:\n" + text_table(
        [[str(k), v] for k, v in sorted(rep.image.items(), key=lambda kv: kv[0].rows)], ["tilde_mu", "charts"])
    _emit(args, payload, table)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adlv", description="Dimensions of affine Deligne-Lusztig varieties in the affine Grassmannian "
                                 "of Res GL_h via extended EL-charts.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", help="dimension by closed formula and/or chart enumeration")
    _add_instance(p)
    p.add_argument("--method", choices=("formula", "enumerate", "both"), default="formula")
    p.add_argument("--newton", help="Newton point for a general class, e.g. 1/2,1/2,2")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("enumerate", help="stream all extended EL-charts as JSON lines")
    _add_instance(p)
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("polygon", help="SVG of two polygons and the lattice points between them")
    p.add_argument("--nu1", required=True, help="upper vector, e.g. 3/7,3/7,3/7,3/7,3/7,3/7,3/7")
    p.add_argument("--nu2", required=True, help="lower integral vector, e.g. 0,0,0,0,0,1,2")
    p.add_argument("--out", help="SVG output path (default: stdout)")
    p.set_defaults(func=cmd_polygon)

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--suite", choices=("metrics", "charts", "deformation", "levi", "components", "all"),
                   default="all")
    p.add_argument("--grid", choices=("small", "full"), default="full")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", help="report on the minuscule component conjecture")
    _add_instance(p)
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AdlvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
