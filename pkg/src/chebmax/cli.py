"""Command-line front end.

Exit codes: 0 success, 1 usage or validation error, 2 budget refusal.
JSON output is canonical (sorted keys, compact separators); large integers
are written as decimal strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from . import cmgal, zeta
from .classify import admissible_pairs, classify, descent_certificate, survey
from .curve import CurveSpec, count_points, genus, maximal_count
from .ff import DEFAULT_BUDGET, BudgetExceeded
from .intpoly import chebyshev, format_poly, reduce_mod


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


# -- subcommand implementations; each returns (inputs, result, cost) --------


def cmd_cheb(a):
    poly = chebyshev(a.d)
    coeffs = list(reduce_mod(poly, a.mod).coeffs) if a.mod else list(poly.coeffs)
    text = format_poly(coeffs, descending=not a.ascending)
    return {"d": a.d, "mod": a.mod}, {"poly": text, "coeffs": [str(c) for c in coeffs]}, a.d


def _spec(a):
    return CurveSpec(a.d, a.p, a.n)


def cmd_count(a):
    spec = _spec(a)
    n = count_points(spec, workers=a.threads, budget=a.budget)
    result = {"count": str(n), "q": str(spec.q), "genus": spec.genus}
    if spec.n % 2 == 0:
        result["maximal_bound"] = str(maximal_count(spec.genus, spec.q))
    return {"d": a.d, "p": a.p, "n": a.n}, result, spec.cost


def cmd_maximal(a):
    spec = _spec(a)
    if spec.n % 2:
        raise ValueError("maximality needs an even extension degree n")
    bound = maximal_count(spec.genus, spec.q)
    inputs = {"d": a.d, "p": a.p, "n": a.n, "method": a.method}
    if a.method == "count":
        n = count_points(spec, workers=a.threads, budget=a.budget)
        return inputs, {"maximal": n == bound, "count": str(n), "bound": str(bound), "decided_by": "count"}, spec.cost
    if a.method == "lpoly":
        P = zeta.lpoly_of_curve(a.d, a.p, workers=a.threads, budget=a.budget)
        predicted = zeta.counts_from_lpoly(P, a.n) if P.g else spec.q + 1
        result = {"maximal": predicted == bound, "count": str(predicted), "bound": str(bound),
                  "decided_by": f"L-polynomial from counts over F_{a.p}^m, m <= {P.g}"}
        return inputs, result, a.p ** spec.genus * a.d
    verdict = classify(a.d, a.p)
    result = {"maximal": verdict.predicts_maximal(a.n), "bound": str(bound),
              "decided_by": verdict.rule, "verdict": verdict.to_json()}
    return inputs, result, 0


def cmd_lpoly(a):
    P = zeta.lpoly_of_curve(a.d, a.p, a.n, workers=a.threads, budget=a.budget)
    result = {"lpoly": P.to_json(), "slopes": zeta.newton_slopes(P).to_json() if P.g else {},
              "display": zeta.factor_display(P)}
    return {"d": a.d, "p": a.p, "n": a.n}, result, a.p ** (a.n * genus(a.d)) * a.d


def cmd_slopes(a):
    ms = cmgal.slopes_multiset(a.ell, a.p)
    return {"ell": a.ell, "p": a.p}, {"slopes": ms.to_json(), "supersingular": ms.is_supersingular()}, 0


def cmd_slopes2(a):
    ms = cmgal.slopes2_multiset(a.d, a.p)
    return {"d": a.d, "p": a.p}, {"slopes": ms.to_json(), "supersingular": ms.is_supersingular()}, 0


def cmd_classify(a):
    return {"d": a.d, "p": a.p}, classify(a.d, a.p).to_json(), 0


def cmd_descent(a):
    cert = descent_certificate(a.ell, a.p)
    return {"ell": a.ell, "p": a.p}, cert.to_json(), 0


def cmd_survey(a):
    report = survey(a.max, a.mode, a.n_max)
    return {"mode": a.mode, "max": a.max, "n_max": a.n_max}, report, 0


def cmd_check_pairs(a):
    if a.ell and a.ell2:
        pairs = [(a.ell, a.ell2)]
    else:
        pairs = admissible_pairs(a.max)
    rows = [{"ell1": x, "ell2": y, "classes": sorted(cmgal.check_pair(x, y))} for x, y in pairs]
    return {"ell": a.ell, "ell2": a.ell2, "max": a.max}, {"rows": rows, "all_empty": all(not r["classes"] for r in rows)}, 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["table", "json", "csv"], default="table")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="element-visit budget")
    common.add_argument("--threads", type=int, default=1)

    parser = Parser(prog="chebmax", description="Maximality of y^2 = phi_d(x) over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=Parser)

    def add(name, fn, *args):
        sp = sub.add_parser(name, parents=[common])
        for flag, kw in args:
            sp.add_argument(flag, **kw)
        sp.set_defaults(fn=fn)
        return sp

    D = ("--d", {"type": int, "required": True})
    P = ("--p", {"type": int, "required": True})
    N = ("--n", {"type": int, "default": 1})
    ELL = ("--ell", {"type": int, "required": True})

    add("cheb", cmd_cheb, D, ("--mod", {"type": int}), ("--ascending", {"action": "store_true"}))
    add("count", cmd_count, D, P, N)
    add("maximal", cmd_maximal, D, P, ("--n", {"type": int, "required": True}),
        ("--method", {"choices": ["count", "lpoly", "classify"], "default": "count"}))
    add("lpoly", cmd_lpoly, D, P, N)
    add("slopes", cmd_slopes, ELL, P)
    add("slopes2", cmd_slopes2, D, P)
    add("classify", cmd_classify, D, P)
    add("descent", cmd_descent, ELL, P)
    add("survey", cmd_survey, ("--mode", {"choices": ["prime-sweep", "pair-sweep", "prime-power-sweep"],
                                          "required": True}),
        ("--max", {"type": int, "default": 101}), ("--n-max", {"type": int, "default": 2}))
    add("check-pairs", cmd_check_pairs, ("--ell", {"type": int}), ("--ell2", {"type": int}),
        ("--max", {"type": int, "default": 101}))
    return parser


def _flatten(prefix, obj, out):
    if isinstance(obj, dict):
        for k in sorted(obj):
            _flatten(f"{prefix}.{k}" if prefix else str(k), obj[k], out)
    elif isinstance(obj, list) and obj and isinstance(obj[0], dict):
        for i, item in enumerate(obj):
            _flatten(f"{prefix}[{i}]", item, out)
    else:
        out.append((prefix, obj if not isinstance(obj, list) else " ".join(map(str, obj))))


def render(report, fmt):
    if fmt == "json":
        return dumps(report)
    if fmt == "table" and report["command"] == "cheb":
        return report["result"]["poly"]
    rows = []
    _flatten("", report["result"], rows)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        w.writerows(rows)
        return buf.getvalue().rstrip("\n")
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def run(argv=None):
    """Parse, execute and return (exit code, report or None)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1, None
    start = time.perf_counter()
    try:
        inputs, result, cost = args.fn(args)
    except BudgetExceeded as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        report = {"command": args.command, "error": "budget", "cost_estimate": str(exc.cost),
                  "budget": str(exc.budget)}
        if args.format == "json":
            print(dumps(report))
        return 2, report
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1, None
    report = {
        "command": args.command,
        "inputs": inputs,
        "result": result,
        "run": {"wall_time": f"{time.perf_counter() - start:.3f}", "cost_estimate": str(cost),
                "budget": str(args.budget), "threads": args.threads},
    }
    print(render(report, args.format))
    return 0, report


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
