"""Command-line interface: bounds, spread, verify, derive-cwc, search, ratio.

Exit codes: 0 success, 1 domain error, 2 usage error.  Numeric output is
decimal strings; --json switches to machine-readable JSON with fixed key
order, and errors become structured JSON on stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bounds import CodeParams, bound_ratio_table, bound_report
from .code import (
    code_from_json,
    code_to_json,
    cwc_to_text,
    derived_cwc,
    min_distance,
    punctured_cwc,
)
from .errors import CdcodesError
from .field import field_from_order
from .search import DEFAULT_SEARCH_BUDGET, brute_force_optimum
from .steiner import construct_spread, is_steiner_structure


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cdcodes",
        description="Constant dimension (subspace) codes: bounds, spreads, search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bounds = sub.add_parser("bounds", help="upper bounds for given parameters")
    p_bounds.add_argument("--q", type=int, required=True)
    p_bounds.add_argument("--n", type=int, required=True)
    p_bounds.add_argument("--delta", type=int, required=True)
    p_bounds.add_argument("--l", type=int, required=True)
    p_bounds.add_argument("--json", action="store_true")

    p_spread = sub.add_parser("spread", help="construct and verify a spread code")
    p_spread.add_argument("--q", type=int, required=True)
    p_spread.add_argument("--l", type=int, required=True)
    p_spread.add_argument("--k", type=int, required=True)
    p_spread.add_argument("--out", type=Path)
    p_spread.add_argument("--json", action="store_true")

    p_verify = sub.add_parser("verify", help="re-measure a code file")
    p_verify.add_argument("--in", dest="infile", type=Path, required=True)
    p_verify.add_argument("--steiner", type=int, metavar="T")
    p_verify.add_argument("--json", action="store_true")

    p_cwc = sub.add_parser("derive-cwc", help="binary constant weight image of a code")
    p_cwc.add_argument("--in", dest="infile", type=Path, required=True)
    p_cwc.add_argument("--punctured", action="store_true")
    p_cwc.add_argument("--out", type=Path, required=True)
    p_cwc.add_argument("--json", action="store_true")

    p_search = sub.add_parser("search", help="exact optimum by brute force")
    p_search.add_argument("--q", type=int, required=True)
    p_search.add_argument("--n", type=int, required=True)
    p_search.add_argument("--delta", type=int, required=True)
    p_search.add_argument("--l", type=int, required=True)
    p_search.add_argument("--all-optima", action="store_true")
    p_search.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)

    p_ratio = sub.add_parser("ratio", help="singleton/wxs bound ratio table")
    p_ratio.add_argument("--n", type=int, required=True)
    p_ratio.add_argument("--l", type=int, required=True)
    p_ratio.add_argument("--delta", type=int, required=True)
    p_ratio.add_argument("--q-list", dest="q_list", required=True,
                         help="comma-separated field orders, e.g. 2,3,4,5")
    p_ratio.add_argument("--digits", type=int, default=2)
    p_ratio.add_argument("--json", action="store_true")

    return parser


def _params_or_usage(parser, q, n, delta, l) -> CodeParams:
    if not (1 <= delta <= l <= n):
        parser.error(f"need 1 <= delta <= l <= n, got delta={delta}, l={l}, n={n}")
    if q < 2:
        parser.error("q must be >= 2")
    return CodeParams(q=q, n=n, delta=delta, l=l)


def _cmd_bounds(args) -> int:
    report = bound_report(CodeParams(args.q, args.n, args.delta, args.l))
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
        return 0
    for o in report.orientations:
        exact = f"{o.wxs_exact.numerator}/{o.wxs_exact.denominator}"
        print(f"singleton   l={o.l}  {o.singleton}")
        print(f"wxs         l={o.l}  {o.wxs_floor}  exact={exact}")
        ji = "n/a" if o.johnson_i is None else str(o.johnson_i)
        print(f"johnson_i   l={o.l}  {ji}")
        print(f"johnson_ii  l={o.l}  {o.johnson_ii}")
    print(f"best        {report.best}  ({report.best_bound}, l={report.best_l})")
    return 0


def _cmd_spread(args) -> int:
    spec = field_from_order(args.q)
    code = construct_spread(spec, args.l, args.k)
    d = min_distance(code)
    check = is_steiner_structure(code, 1)
    summary = {
        "blocks": code.size,
        "params": f"({code.n}, {code.size}, {d}, {code.l})_{args.q}",
        "min_distance": d,
        "steiner": f"verified t=1" if check.is_steiner else "failed",
    }
    if args.out:
        args.out.write_text(json.dumps(code_to_json(code), indent=2) + "\n")
        summary["out"] = str(args.out)
    if args.json:
        doc = {"summary": summary}
        if not args.out:
            doc["code"] = code_to_json(code)
        print(json.dumps(doc, indent=2))
    else:
        for key, value in summary.items():
            print(f"{key}: {value}")
    return 0


def _cmd_verify(args) -> int:
    code = code_from_json(json.loads(args.infile.read_text()))
    d = min_distance(code) if code.size >= 2 else None
    params_line = f"({code.n}, {code.size}, {d if d is not None else 'none'}, {code.l})_{code.spec.q}"
    out = {"params": params_line, "blocks": code.size}
    if args.steiner is not None:
        check = is_steiner_structure(code, args.steiner)
        out["steiner"] = check.is_steiner
        if not check.is_steiner:
            out["witness"] = [list(r) for r in check.witness.basis]
            out["witness_cover_count"] = check.witness_cover_count
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        for key, value in out.items():
            print(f"{key}: {json.dumps(value) if isinstance(value, list) else str(value).lower() if isinstance(value, bool) else value}")
    return 0


def _cmd_derive_cwc(args) -> int:
    code = code_from_json(json.loads(args.infile.read_text()))
    cwc = punctured_cwc(code) if args.punctured else derived_cwc(code)
    text = cwc_to_text(cwc)
    args.out.write_text(text)
    header = text.splitlines()[0]
    if args.json:
        print(json.dumps({"header": header, "out": str(args.out)}, indent=2))
    else:
        print(f"header: {header}")
        print(f"out: {args.out}")
    return 0


def _cmd_search(args) -> int:
    params = CodeParams(args.q, args.n, args.delta, args.l)
    result = brute_force_optimum(
        params, enumerate_all_optima=args.all_optima, budget=args.budget
    )
    print(json.dumps(result.to_json(), indent=2))
    return 0


def _cmd_ratio(args) -> int:
    q_list = [int(tok) for tok in args.q_list.split(",") if tok.strip()]
    ratios = bound_ratio_table(args.n, args.l, args.delta, q_list, args.digits)
    if args.json:
        doc = {
            "n": args.n,
            "l": args.l,
            "delta": args.delta,
            "ratios": {str(q): r for q, r in zip(q_list, ratios)},
        }
        print(json.dumps(doc, indent=2))
    else:
        for q, r in zip(q_list, ratios):
            print(f"q={q} {r}")
    return 0


_HANDLERS = {
    "bounds": _cmd_bounds,
    "spread": _cmd_spread,
    "verify": _cmd_verify,
    "derive-cwc": _cmd_derive_cwc,
    "search": _cmd_search,
    "ratio": _cmd_ratio,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command in ("bounds", "search"):
        _params_or_usage(parser, args.q, args.n, args.delta, args.l)
    if args.command == "ratio":
        q_list = [int(tok) for tok in args.q_list.split(",") if tok.strip()]
        if not q_list:
            parser.error("--q-list must name at least one field order")
        for q in q_list:
            _params_or_usage(parser, q, args.n, args.delta, args.l)
    try:
        return _HANDLERS[args.command](args)
    except (CdcodesError, ValueError, OSError) as exc:
        message = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        if getattr(args, "json", False):
            print(json.dumps(message), file=sys.stderr)
        else:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
