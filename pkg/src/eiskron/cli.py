"""Command-line front end: expansion, verification, scanning, numerics.

Exit codes: 0 success / verified, 1 verification failure, 2 invalid input.
With --json, exactly one JSON document is written to stdout.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction

from .eisenstein import (EisensteinIndex, InvalidIndexError, bg_tilde_s,
                         eisenstein_qexp)
from .qseries import QExpansion
from .relations import (InvalidInstanceError, RelationInstance, poly_P,
                        recurrence_check, run_scan, verify_instance)

DEFAULT_ORDER = 40


def _pair_int(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(",")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'i,j', got {text!r}")


def _pair_float(text: str) -> complex:
    try:
        re, im = text.split(",")
        return complex(float(re), float(im))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eiskron",
                                 description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="print the q-expansion of one series")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--a", type=_pair_int, required=True, metavar="A1,A2")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("bg-series", help="print the Gamma_1(N) variant series")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="verify one 3-term relation instance")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--split", type=_pair_int, required=True, metavar="K1,K2")
    p.add_argument("--a", type=_pair_int, required=True, metavar="A1,A2")
    p.add_argument("--b", type=_pair_int, required=True, metavar="B1,B2")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("scan", help="verify every instance up to given bounds")
    p.add_argument("--level-max", type=int, required=True)
    p.add_argument("--weight-max", type=int, default=6)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--parallel", type=int, default=1, metavar="N")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("recurrences", help="check the closed-form recurrence system")
    p.add_argument("--degree-max", type=int, default=10)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("numeric", help="floating-point checks of the analytic theory")
    p.add_argument("--check", required=True,
                   choices=["relation", "diff", "bracket", "modularity", "asymptotics"])
    p.add_argument("--tau", type=_pair_float, default=complex(0.3, 1.1), metavar="RE,IM")
    p.add_argument("--weight", type=int, default=None)
    p.add_argument("--split", type=_pair_int, default=None, metavar="K1,K2")
    p.add_argument("--seed", type=int, default=20240901)
    p.add_argument("--json", action="store_true")
    return ap


def _emit(args, doc: dict, human: str) -> None:
    if args.json:
        print(json.dumps(doc))
    else:
        print(human)


def cmd_expand(args) -> int:
    idx = EisensteinIndex(args.weight, args.level, args.a[0], args.a[1])
    f = eisenstein_qexp(idx, args.order)
    _emit(args, f.to_json_dict(), str(f))
    return 0


def cmd_bg_series(args) -> int:
    f = bg_tilde_s(args.weight, args.level, args.a, args.order)
    _emit(args, f.to_json_dict(), str(f))
    return 0


def cmd_verify(args) -> int:
    inst = RelationInstance(args.level, args.weight, args.split[0], args.split[1],
                            args.a, args.b)
    report = verify_instance(inst, args.order)
    ok = report["residual_zero"]
    human = ("verified: residual is zero in Q(zeta_N) at order "
             f"{args.order}" if ok else
             f"FAILED: first nonzero exponent {report['first_nonzero_exponent']}"
             f"/{args.level}")
    _emit(args, report, human)
    return 0 if ok else 1


def cmd_scan(args) -> int:
    summary = run_scan(args.level_max, args.weight_max, args.order,
                       workers=args.parallel)
    human = (f"instances={summary['instances']} passed={summary['passed']} "
             f"failed={summary['failed']} (order {summary['order']})")
    _emit(args, summary, human)
    return 0 if summary["failed"] == 0 else 1


def cmd_recurrences(args) -> int:
    if args.degree_max < 0:
        print("degree-max must be >= 0", file=sys.stderr)
        return 2
    report = recurrence_check(args.degree_max + 2)
    ok = report["all_pass"]
    human = (f"{len(report['checks'])} identities checked up to degree "
             f"{args.degree_max}: " + ("all pass" if ok else "FAILURES"))
    _emit(args, report, human)
    return 0 if ok else 1


def cmd_numeric(args) -> int:
    # imported lazily: the exact-arithmetic commands should not need numpy
    from . import numeric as nm

    cfg = nm.NumericConfig(tau=args.tau)
    rng = random.Random(args.seed)
    reports = []

    def draw_point() -> nm.TorusPoint:
        return nm.TorusPoint(rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95))

    if args.check == "relation":
        k = args.weight or 2
        if k < 2:
            print("relation check needs weight >= 2", file=sys.stderr)
            return 2
        points = [(draw_point(), draw_point()) for _ in range(3)]
        points.append((nm.TorusPoint(1 / math.sqrt(5), 1 / math.sqrt(7)),
                       nm.TorusPoint(1 / math.sqrt(3), 1 / math.sqrt(11))))
        tail = nm.fourier_tail_estimate(k, cfg)
        for k1 in range(k - 1):
            k2 = k - 2 - k1
            for u, v in points:
                res = nm.check_relation_numeric(k1, k2, u, v, cfg)
                reports.append(nm.make_report(
                    "relation", {"split": [k1, k2], "u": [u.x1, u.x2],
                                 "v": [v.x1, v.x2]}, res, tail, cfg.tol))
    elif args.check == "diff":
        k = args.weight or 1
        p = draw_point()
        res = nm.check_diff_relation(k, p, cfg)
        reports.append(nm.make_report(
            "diff", {"weight": k, "p": [p.x1, p.x2], "h": 1e-4}, res,
            nm.fourier_tail_estimate(k, cfg), cfg.fd_tol))
    elif args.check == "bracket":
        k1, k2 = args.split or (1, 0)
        P = poly_P(k1, k2)
        u, v = draw_point(), draw_point()
        e1, e2 = nm.check_diff_bracket(P, u, v, cfg)
        tail = nm.fourier_tail_estimate(k1 + k2 + 2, cfg)
        reports.append(nm.make_report(
            "bracket", {"split": [k1, k2], "u": [u.x1, u.x2], "v": [v.x1, v.x2],
                        "side": "u"}, e1, tail, cfg.fd_tol))
        reports.append(nm.make_report(
            "bracket", {"split": [k1, k2], "u": [u.x1, u.x2], "v": [v.x1, v.x2],
                        "side": "v"}, e2, tail, cfg.fd_tol))
    elif args.check == "modularity":
        k = args.weight or 3
        x = nm.TorusPoint(float(Fraction(1, 3)), 0.0)
        for name, gam, tol in (("T", ((1, 1), (0, 1)), cfg.tol),
                               ("S", ((0, -1), (1, 0)), 1e-6)):
            res = nm.check_modularity(k, x, gam, cfg)
            reports.append(nm.make_report(
                "modularity", {"weight": k, "gamma": name, "x": [x.x1, x.x2]},
                res, nm.fourier_tail_estimate(k, cfg), tol))
    else:  # asymptotics
        k = args.weight or 2
        if k not in (1, 2):
            print("asymptotics check needs weight 1 or 2", file=sys.stderr)
            return 2
        rep = nm.check_asymptotics(k, args.tau, cfg)
        ok = rep["limit_error"] < 1e-6 and rep.get("real_ray_error", 0.0) < 1e-6
        rep["pass"] = bool(ok)
        reports.append(rep)

    ok = all(r["pass"] for r in reports)
    doc = {"check": args.check, "tau": [args.tau.real, args.tau.imag],
           "reports": reports, "pass": ok}
    human_lines = []
    for r in reports:
        res = r.get("residual", r.get("limit_error"))
        human_lines.append(
            f"{r['check']}: residual={res:.3e} "
            f"tail_estimate={r.get('tail_estimate', 0.0):.3e} "
            f"{'PASS' if r['pass'] else 'FAIL'}")
    _emit(args, doc, "\n".join(human_lines))
    return 0 if ok else 1


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    handlers = {
        "expand": cmd_expand,
        "bg-series": cmd_bg_series,
        "verify": cmd_verify,
        "scan": cmd_scan,
        "recurrences": cmd_recurrences,
        "numeric": cmd_numeric,
    }
    try:
        return handlers[args.command](args)
    except (InvalidIndexError, InvalidInstanceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
