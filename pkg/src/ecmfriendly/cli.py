"""Command-line front end for scans, families, certificates and tables.

Exit codes: 0 success, 2 usage error (argparse's convention), 3
computation error such as an unresolved image identification.
"""

import argparse
import os
import sys

from .curves import Montgomery, TwistedEdwards, curve_literal, parse_curve
from .families import (
    SuyamaCurve,
    divisibility_certificate,
    parse_family_spec,
    satisfies_eq11,
    satisfies_eq94,
)
from .harness import (
    DEFAULT_BOUND,
    UNRESOLVED,
    density_scan,
    export,
    identify_image,
    image_order_estimate,
    reproduce,
    valuation_scan,
)


class ComputationError(Exception):
    pass


def _add_common(sub, curve=True):
    if curve:
        sub.add_argument("--curve", help="curve literal w:a,b | m:A,B | e:a,d")
        sub.add_argument("--spec", help="family spec (e.g. suyama:11, ed24:gminv:g=9/2)")
    sub.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="prime bound (default 2^20)")
    sub.add_argument("--threads", type=int, default=os.cpu_count(), help="worker count")
    sub.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    sub.add_argument("--json", action="store_true", help="JSON output")


def _resolve_curve(args):
    if getattr(args, "curve", None):
        return parse_curve(args.curve)
    if getattr(args, "spec", None):
        member = parse_family_spec(args.spec)
        return member.curve if isinstance(member, SuyamaCurve) else member
    raise ComputationError("need --curve or --spec")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ecmfriendly",
        description="Torsion statistics of elliptic curves modulo primes, "
        "and ECM-friendly curve families with divisibility certificates.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("probe", help="torsion-shape densities at a level")
    _add_common(p)
    p.add_argument("--pi", type=int, required=True, help="torsion prime")
    p.add_argument("--k", type=int, default=1, help="level (default 1)")
    p.add_argument("--mod", type=int, help="condition modulus n")
    p.add_argument("--res", type=int, help="condition residue a (with --mod)")

    p = subs.add_parser("valuation", help="average valuation of pi in #E(F_p)")
    _add_common(p)
    p.add_argument("--pi", type=int, required=True)
    p.add_argument("--mod", type=int, help="split report by p mod n")

    p = subs.add_parser("galois-order", help="estimate the Galois image order mod m")
    _add_common(p)
    p.add_argument("--m", type=int, required=True, help="torsion modulus (prime power <= 16)")
    p.add_argument("--identify", action="store_true", help="also identify a candidate image (m <= 8)")

    p = subs.add_parser("family", help="construct a family member")
    p.add_argument("--spec", required=True)
    p.add_argument("--json", action="store_true")

    p = subs.add_parser("certify", help="divisibility certificates for a family member")
    p.add_argument("--spec", required=True)
    p.add_argument("--check-primes", type=int, default=25, help="verification prefix length")
    p.add_argument("--json", action="store_true")

    p = subs.add_parser("reproduce", help="theory-vs-experiment table rows")
    p.add_argument("--table", required=True, choices=("T1", "T2", "T3", "T4"))
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p.add_argument("--threads", type=int, default=os.cpu_count())
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", default="text", choices=("text", "csv", "json"))
    p.add_argument("--out", help="write the report to a file as well")
    return parser


def cmd_probe(args):
    curve = _resolve_curve(args)
    condition = None
    if args.mod is not None or args.res is not None:
        if args.mod is None or args.res is None:
            raise ComputationError("--mod and --res go together")
        condition = (args.res, args.mod)
    rows = []
    for shape in [(i, j) for j in range(args.k + 1) for i in range(j + 1)]:
        est = density_scan(
            curve, args.pi, args.k, shape, args.bound,
            condition=condition, seed=args.seed, workers=args.threads,
        )
        rows.append((shape, est))
    if args.json:
        import json

        payload = {
            "curve": curve_literal(curve),
            "pi": args.pi,
            "k": args.k,
            "bound": args.bound,
            "condition": list(condition) if condition else None,
            "shapes": [
                {
                    "shape": list(shape),
                    "hits": est.hits,
                    "total": est.total,
                    "estimate": float("%.6g" % est.estimate),
                    "stderr": float("%.6g" % est.stderr),
                }
                for shape, est in rows
            ],
            "excluded_primes": list(rows[0][1].excluded_primes) if rows else [],
        }
        print(json.dumps(payload, indent=2))
    else:
        print("torsion shapes of %s at pi=%d, level %d, bound %d"
              % (curve_literal(curve), args.pi, args.k, args.bound))
        for shape, est in rows:
            print("  (%d,%d): %.6f +- %.6f  (%d/%d)"
                  % (shape + (est.estimate, est.stderr, est.hits, est.total)))
    return 0


def cmd_valuation(args):
    curve = _resolve_curve(args)
    rep = valuation_scan(
        curve, args.pi, args.bound, split=args.mod, seed=args.seed, workers=args.threads
    )
    if args.json:
        print(export(rep, "json"), end="")
    else:
        print("average valuation of %d in #E(F_p), %s, bound %d"
              % (args.pi, curve_literal(curve), args.bound))
        print("  mean %.6f +- %.6f over %d primes (%d excluded)"
              % (rep.mean, rep.stderr, rep.count, len(rep.excluded_primes)))
        if rep.classes:
            for a, (mean, cnt) in sorted(rep.classes.items()):
                print("  p = %d mod %d: %.6f  (%d primes)" % (a, rep.split_modulus, mean, cnt))
    return 0


def cmd_galois_order(args):
    curve = _resolve_curve(args)
    order, stderr = image_order_estimate(
        curve, args.m, args.bound, seed=args.seed, workers=args.threads
    )
    out = {"curve": curve_literal(curve), "m": args.m, "bound": args.bound,
           "order_estimate": float("%.6g" % order), "stderr": float("%.6g" % stderr)}
    status = 0
    if args.identify:
        ident = identify_image(curve, args.m, args.bound, seed=args.seed, workers=args.threads)
        out["identified_order"] = len(ident.image)
        out["identified_status"] = ident.status
        out["chi_square"] = float("%.6g" % ident.chi_square)
        out["dof"] = ident.dof
        if ident.status == UNRESOLVED:
            status = 3
    if args.json:
        import json

        print(json.dumps(out, indent=2))
    else:
        print("Galois image order mod %d for %s" % (args.m, out["curve"]))
        print("  estimate %.3f +- %.3f" % (order, stderr))
        if args.identify:
            print("  identified candidate: order %d (%s, chi2=%.2f/%d)"
                  % (out["identified_order"], out["identified_status"],
                     out["chi_square"], out["dof"]))
    if status:
        print("image identification UNRESOLVED", file=sys.stderr)
    return status


def _family_payload(member):
    if isinstance(member, SuyamaCurve):
        A, B = member.curve.A, member.curve.B
        return {
            "kind": "suyama",
            "sigma": str(member.sigma),
            "A": str(A),
            "B": str(B),
            "x3": str(member.x3),
            "x_inf": str(member.x_inf),
            "satisfies_eq11": satisfies_eq11(A, B),
            "satisfies_eq94": satisfies_eq94(A, B),
            "curve": curve_literal(member.curve),
        }
    if isinstance(member, TwistedEdwards):
        return {"kind": "edwards", "a": str(member.a), "d": str(member.d),
                "curve": curve_literal(member)}
    if isinstance(member, Montgomery):
        return {"kind": "montgomery", "A": str(member.A), "B": str(member.B),
                "curve": curve_literal(member)}
    raise ComputationError("unexpected family member %r" % (member,))


def cmd_family(args):
    member = parse_family_spec(args.spec)
    payload = _family_payload(member)
    if args.json:
        import json

        print(json.dumps(payload, indent=2))
    else:
        for key, val in payload.items():
            print("%s: %s" % (key, val))
    return 0


def cmd_certify(args):
    member = parse_family_spec(args.spec)
    tag = None
    if args.spec.startswith("ed24:gminv"):
        from .families import _keyvals, _rat

        kv = _keyvals(args.spec.split(":", 2)[2])
        tag = ("gminv", _rat(kv["g"]))
    certs = divisibility_certificate(member, tag=tag, check_primes=args.check_primes)
    if args.json:
        import json

        print(json.dumps([
            {"divisor": c.divisor, "description": c.description}
            for c in certs
        ], indent=2))
    else:
        print("certificates for %s (spot-checked on %d good primes):"
              % (args.spec, args.check_primes))
        for c in certs:
            print("  %2d | #E  when  %s" % (c.divisor, c.description))
    return 0


def cmd_reproduce(args):
    from .harness import table_excluded_primes

    rows = reproduce(args.table, args.bound, seed=args.seed, workers=args.threads)
    excluded = table_excluded_primes(args.table, args.bound, args.seed)
    if args.format == "text":
        print("%-22s %14s %12s %12s %8s  %s" % ("row", "theory", "dec", "experiment", "sigma", "flags"))
        for r in rows:
            print("%-22s %14s %12.6f %12.6f %8.2f  %s"
                  % (r.label, r.theory, float(r.theory), r.experiment, r.sigma,
                     ",".join(r.flags)))
        if excluded:
            print("excluded bad-reduction primes: %s" % (excluded,))
        if args.out:
            export(rows, "csv", args.out, bound=args.bound)
    else:
        text = export(rows, args.format, args.out, bound=args.bound, excluded_primes=excluded)
        print(text, end="")
    return 0


_COMMANDS = {
    "probe": cmd_probe,
    "valuation": cmd_valuation,
    "galois-order": cmd_galois_order,
    "family": cmd_family,
    "certify": cmd_certify,
    "reproduce": cmd_reproduce,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ComputationError, ArithmeticError, ValueError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
