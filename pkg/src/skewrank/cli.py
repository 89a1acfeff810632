"""``skewrank`` command line.

JSON goes to stdout, a one-line summary to stderr.  Exit status is 0 when
everything checks out, 1 when a verification campaign disagrees or a target
rank is not achievable, and 2 for usage, parse or guard errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .combinat import matching_number, zero_forcing_number
from .engine import (
    EngineError,
    FieldSpec,
    NotAchievable,
    certify,
    mr_bounds,
    mr_exact_structural,
    path_power_mr,
)
from .formats import FormatError, read_graph
from .graph import GraphError, path_power
from .linalg import BudgetExceeded, FieldError
from .verify import CAMPAIGNS, UnknownCampaign, run_verification

OK, DISAGREE, USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _emit(obj, summary: str):
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")
    print(summary, file=sys.stderr)


def _primes(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None


def cmd_mr(args) -> int:
    g = read_graph(args.file)
    spec = FieldSpec.parse(args.field)
    res = mr_exact_structural(g, spec, oracle=args.oracle)
    out = res.to_json()
    out["field"] = str(spec)
    value = f"exact {res.exact}" if res.exact is not None else f"bounds [{res.lower}, {res.upper}]"
    _emit(out, f"mr over {spec}: {value}")
    return OK


def cmd_bounds(args) -> int:
    g = read_graph(args.file)
    res = mr_bounds(g)
    _emit(res.to_json(), f"{res.lower} <= mr <= {res.upper}")
    return OK


def cmd_zf(args) -> int:
    g = read_graph(args.file)
    z, witness = zero_forcing_number(g)
    _emit({"zero_forcing_number": z, "witness": sorted(witness)}, f"Z = {z}")
    return OK


def cmd_match(args) -> int:
    g = read_graph(args.file)
    size, m = matching_number(g)
    _emit({"matching_number": size, "matching": [list(e) for e in sorted(m.edges)]},
          f"match = {size}, maximum rank = {2 * size}")
    return OK


def cmd_certify(args) -> int:
    g = read_graph(args.file)
    try:
        w = certify(g, args.target, args.p)
    except NotAchievable as exc:
        _emit({"achievable": False, "reason": exc.reason, "message": str(exc)}, str(exc))
        return DISAGREE
    out = {"achievable": True, "rank": w.rank, "verified": w.verify()}
    out.update(w.matrix.to_json())
    _emit(out, f"rank {w.rank} matrix over GF({args.p})")
    return OK


def cmd_power_path(args) -> int:
    value = path_power_mr(args.n, args.k)
    g = path_power(args.n, min(args.k, args.n - 1))
    _emit({"n": args.n, "k": args.k, "mr": value, "edges": [list(e) for e in g.sorted_edges()]},
          f"mr(P_{args.n}^{args.k}) = {value}")
    return OK


def cmd_verify(args) -> int:
    params = {k: v for k, v in (("nmax", args.nmax), ("primes", args.primes), ("seed", args.seed))
              if v is not None}
    if args.budget is not None:
        params["budget"] = None if args.budget == 0 else args.budget
    report = run_verification(args.campaign, params, workers=args.workers)
    obj = report.to_json()
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(obj, fh, indent=2)
    _emit(obj, report.summary())
    return OK if report.passed else DISAGREE


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="skewrank", description="Minimum skew rank of small graphs.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("mr", help="minimum skew rank via the rule engine")
    p.add_argument("file")
    p.add_argument("--field", default="generic", help="an odd prime or 'generic'")
    p.add_argument("--oracle", action="store_true",
                   help="close gaps by exhaustive search (finite field only)")
    p.set_defaults(func=cmd_mr)

    for name, func, text in [("bounds", cmd_bounds, "zero forcing and matching bounds"),
                             ("zf", cmd_zf, "zero forcing number"),
                             ("match", cmd_match, "matching number")]:
        p = sub.add_parser(name, help=text)
        p.add_argument("file")
        p.set_defaults(func=func)

    p = sub.add_parser("certify", help="find a matrix of a given rank")
    p.add_argument("file")
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("power-path", help="minimum skew rank of a path power")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_power_path)

    p = sub.add_parser("verify", help="run a verification campaign")
    p.add_argument("campaign", help=", ".join(CAMPAIGNS))
    p.add_argument("--nmax", type=int)
    p.add_argument("--primes", type=_primes)
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int, help="oracle search-space cap; 0 removes it")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", metavar="OUT")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, GraphError, FieldError, EngineError, BudgetExceeded,
            UnknownCampaign, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownCampaign) else exc
        print(f"skewrank: error: {msg}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
