"""Command-line front end.

    twistedalex compute --presentation 4_1.pres --rep 4_1_rho.rep --column 4
    twistedalex census  --presentation 8_21 --prime 7
    twistedalex scan    --source 8_21 --target 4_1 --prime 7
    twistedalex verify  --hom 9_37_to_4_1.hom --prime 7
    twistedalex classical --presentation 9_37

Presentations may be given as file paths or as bundled knot names.
"""
from __future__ import annotations

import argparse
import json
import sys

from .obstruction import classical_screening, load_hom, sl2_battery, surjection_obstruction, verify_homomorphism
from .polymatrix import MinorExplosionError
from .polys import CoeffRing, is_prime
from .presentations import PresentationSyntaxError, bundled_knots, load_presentation
from .rep_search import FILTERS, SearchBudgetExceeded, SearchOptions, numerator_census
from .twisted import (
    NoInvertibleColumn,
    RepresentationError,
    classical_alexander,
    format_representation,
    load_representation,
    trivial_representation,
    twisted_alexander,
)

MAX_DEFAULT_PRIME = 97


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _check_prime(args, p):
    if p is None:
        return
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    if p > MAX_DEFAULT_PRIME and not args.allow_large_prime:
        raise UsageError(f"prime {p} exceeds {MAX_DEFAULT_PRIME}; pass --allow-large-prime to override")


def _options(args, prime) -> SearchOptions:
    return SearchOptions(prime, filter=args.filter, parallel_width=args.jobs, node_budget=args.node_budget)


def cmd_compute(args) -> int:
    _check_prime(args, args.prime)
    pres = load_presentation(args.presentation)
    if args.trivial_rep:
        ring = CoeffRing.prime_field(args.prime) if args.prime else CoeffRing.integers()
        rep = trivial_representation(ring, pres.ngens)
    elif args.rep:
        rep, _ = load_representation(args.rep, pres)
        if args.prime is not None and rep.ring.p != args.prime:
            raise UsageError(f"--prime {args.prime} does not match the representation file ({rep.ring})")
    else:
        raise UsageError("compute needs --rep or --trivial-rep")
    result = twisted_alexander(pres, rep, pres.abelianization(), j=args.column)
    if args.reduce:
        result = result.reduced()
    payload = {"presentation": pres.name, "ring": repr(rep.ring), "dimension": rep.dim, **result.as_dict()}
    lines = [
        f"numerator:   {result.numerator}",
        f"denominator: {result.denominator}",
        f"column:      {result.column_used}",
    ]
    if result.deficient:
        lines.append("note: fewer relator rows than n(u-1); numerator set to 0")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_census(args) -> int:
    _check_prime(args, args.prime)
    pres = load_presentation(args.presentation)
    census = numerator_census(pres, _options(args, args.prime))
    d = census.as_dict()
    lines = [
        f"{pres.name or args.presentation}: {d['representations']} representations into SL(2, F_{args.prime})"
        f" (filter {args.filter}), {d['skipped']} skipped, {d['distinct']} distinct numerators",
    ]
    lines += [f"  {m:6d}  {q}" for q, m in zip(d["polynomials"], d["multiplicities"])]
    _emit(args, d, "\n".join(lines))
    return 0


def cmd_scan(args) -> int:
    primes = args.prime or [7]
    for p in primes:
        _check_prime(args, p)
    source = load_presentation(args.source)
    target = load_presentation(args.target)
    reports = [surjection_obstruction(source, target, p, _options(args, p)) for p in primes]
    if args.format == "json":
        payload = reports[0].as_dict() if len(reports) == 1 else [r.as_dict() for r in reports]
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n\n".join(r.table() for r in reports))
    return 0


def cmd_verify(args) -> int:
    _check_prime(args, args.prime)
    source = load_presentation(args.source) if args.source else None
    target = load_presentation(args.target) if args.target else None
    hom = load_hom(args.hom, source, target)
    battery = sl2_battery(hom.target, args.prime)
    result = verify_homomorphism(hom, battery)
    payload = {"source": hom.source.name, "target": hom.target.name, "prime": args.prime, **result.as_dict()}
    if args.format == "json":
        payload["failures"] = [
            {"relator": r, "witness": w if isinstance(w, str) else format_representation(battery[w], hom.target)}
            for r, w in result.failures
        ]
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        lines = [f"battery: all {len(battery)} representations of {hom.target.name} into SL(2, F_{args.prime})"]
        for i, img in enumerate(result.relator_images, start=1):
            bad = [w for r, w in result.failures if r == i]
            status = "ok" if not bad else f"FAIL ({len(bad)} witnesses)"
            lines.append(f"relator {i}: image {img}: {status}")
            for w in bad[:3]:
                if isinstance(w, str):
                    lines.append("    nonzero exponent sum")
                else:
                    rep_text = format_representation(battery[w], hom.target).strip().replace("\n", "; ")
                    lines.append(f"    representation #{w}: {rep_text}")
        lines.append("generators covered: " + ("all" if result.covers_all_generators
                                               else "missing " + ", ".join(result.missing_generators)))
        lines.append(("PASS" if result.passed else "FAIL") + " (necessary condition only; the word problem is not decided)")
        print("\n".join(lines))
    return 0 if result.passed else 1


def cmd_classical(args) -> int:
    pres = load_presentation(args.presentation)
    delta = classical_alexander(pres)
    payload = {"presentation": pres.name, "alexander_polynomial": str(delta)}
    text = f"{pres.name or args.presentation}: {delta}"
    if args.target:
        target = load_presentation(args.target)
        ok = classical_screening(pres, target)
        payload["target"] = target.name
        payload["divisible"] = ok
        text += f"\ndivisible by the polynomial of {target.name}: {'yes' if ok else 'no'}"
    _emit(args, payload, text)
    return 0


def cmd_knots(args) -> int:
    names = bundled_knots()
    _emit(args, {"knots": names}, "\n".join(names))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twistedalex", description=__doc__.split("\n\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--allow-large-prime", action="store_true", help=f"accept primes above {MAX_DEFAULT_PRIME}")
    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--filter", choices=FILTERS, default="all")
    search.add_argument("--jobs", type=int, default=1, metavar="N")
    search.add_argument("--node-budget", type=int, default=None, metavar="N")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="twisted Alexander polynomial for one representation")
    p.add_argument("--presentation", required=True)
    p.add_argument("--rep")
    p.add_argument("--trivial-rep", action="store_true")
    p.add_argument("--prime", type=int)
    p.add_argument("--column", type=int)
    p.add_argument("--reduce", action="store_true", help="cancel common factors of numerator and denominator")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("census", parents=[common, search], help="numerators over all SL(2, F_p) representations")
    p.add_argument("--presentation", required=True)
    p.add_argument("--prime", type=int, default=7)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("scan", parents=[common, search], help="try to rule out a surjection source -> target")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--prime", type=int, action="append", help="repeat for several primes (default 7)")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", parents=[common], help="check a homomorphism candidate against a battery")
    p.add_argument("--hom", required=True)
    p.add_argument("--prime", type=int, default=7)
    p.add_argument("--source")
    p.add_argument("--target")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classical", parents=[common], help="classical Alexander polynomial and screening")
    p.add_argument("--presentation", required=True)
    p.add_argument("--target")
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("knots", parents=[common], help="list bundled knot presentations")
    p.set_defaults(func=cmd_knots)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PresentationSyntaxError as exc:
        print(f"error: syntax: {exc}", file=sys.stderr)
        return 2
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (UsageError, RepresentationError, NoInvertibleColumn, MinorExplosionError,
            FileNotFoundError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
