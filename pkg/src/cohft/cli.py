"""Command line front-end.

    cohft rmatrix --side A --m 1 --z-order 3
    cohft verify thm1 obstruction --m 2
    cohft relations --theory 3spin --g 1 --n 1 --codim 1
    cohft graphs --g 2 --n 0

Orders are the highest power kept (z^0..z^N). Exit codes: 0 success,
1 a verification failed, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from itertools import product

from .algebra.serialize import to_json
from .checks import CHECKS
from .frobenius import AmModel, PmModel
from .oscillating import rmatrix_from_saddles_a, rmatrix_from_saddles_pm
from .qde import solve_r_a, solve_r_kprime, solve_r_pm
from .strata.graphs import enumerate_stable_graphs

THEORIES = {"3spin": 1, "4spin": 2, "5spin": 3}


class UsageError(Exception):
    pass


def _rationals(text):
    if text is None:
        return None
    try:
        return [Fraction(x) for x in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a list of exact rationals: {text!r}") from None


def _order(value, name):
    if value < 0:
        raise UsageError(f"{name} must be >= 0")
    return value + 1


def _emit(args, payload, text_lines):
    if args.format == "json":
        out = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        out = "\n".join(text_lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


# rmatrix ----------------------------------------------------------------------------


def build_rmatrix(args):
    z_order = _order(args.z_order, "z-order")
    m = args.m
    if m < 1:
        raise UsageError("m must be >= 1")
    if args.side == "A":
        t = _rationals(args.t)
        model = AmModel(m, t, airy=args.airy)
        build = solve_r_a if args.construction == "qde" else rmatrix_from_saddles_a
        return build(model, z_order)
    if args.side == "K":
        if args.construction != "qde":
            raise UsageError("the lambda chart only has the QDE construction")
        return solve_r_kprime(m, z_order, airy=args.airy)
    q_order = _order(args.q_order, "q-order")
    model = PmModel(m, _rationals(args.lambdas), q_order=q_order)
    if args.construction == "qde":
        return solve_r_pm(model, z_order, q_order)
    return rmatrix_from_saddles_pm(model, z_order, q_order)


def cmd_rmatrix(args):
    r = build_rmatrix(args)
    payload = {
        "side": args.side,
        "m": args.m,
        "construction": args.construction,
        "frame": "hat",
        "zOrder": args.z_order,
        "roots": to_json(r.roots),
        "deltas": to_json(r.deltas),
        "coefficients": [to_json(mat) for mat in r.hat.coeffs],
    }
    if args.side == "P":
        payload["qOrder"] = args.q_order
    lines = [f"R-matrix side={args.side} m={args.m} construction={args.construction} (hat frame)"]
    for n, mat in enumerate(r.hat.coeffs):
        lines.append(f"z^{n}:")
        lines.extend("  " + "  |  ".join(str(x) for x in row) for row in mat)
    _emit(args, payload, lines)
    return 0


# verify -----------------------------------------------------------------------------


def run_checks(names, m=None, seed=None):
    reports = []
    for name in names:
        fn = CHECKS[name]
        if name in ("thm1", "thm2") and m is not None:
            reports += fn(ms=(m,))
        elif name == "saddle":
            reports += fn(seed=seed)
        else:
            reports += fn()
    return reports


def cmd_verify(args):
    names = sorted(CHECKS) if "all" in args.checks else list(dict.fromkeys(args.checks))
    if args.m is not None and args.m not in (1, 2):
        raise UsageError("--m selects 1 or 2 for thm1/thm2")
    reports = run_checks(names, args.m, args.seed)
    views = []
    for rep in reports:
        view = rep.to_json()
        if not args.timings:
            view.pop("seconds", None)
        views.append(view)
    lines = [rep.line() for rep in reports]
    ok = all(rep.passed for rep in reports)
    lines.append("all checks passed" if ok else "some checks failed")
    _emit(args, {"pass": ok, "reports": views}, lines)
    return 0 if ok else 1


# relations --------------------------------------------------------------------------


def cmd_relations(args):
    from .strata.relations import extract_relations, spin_theory

    g, n, codim = args.g, args.n, args.codim
    if g < 0 or n < 0 or 2 * g - 2 + n <= 0:
        raise UsageError(f"(g, n) = ({g}, {n}) is unstable")
    if codim < 0:
        raise UsageError("codim must be >= 0")
    m = THEORIES[args.theory]
    found = []
    if args.r_matrix == "spin":
        theory = spin_theory(m, max(codim, 1))
        if args.inputs is not None:
            tuples = [tuple(int(x) for x in args.inputs.split(","))] if args.inputs else [()]
        else:
            tuples = [a for a in product(range(m + 1), repeat=n) if list(a) == sorted(a)]
        for a in tuples:
            if len(a) != n or any(not 0 <= x <= m for x in a):
                raise UsageError(f"inputs must be {n} values in 0..{m}")
            elem = theory.reconstruct(g, n, a).codim_part(codim)
            found += [v for v in extract_relations(elem, theory.disc, a) if v.coefficients]
    payload = {
        "theory": args.theory,
        "rMatrix": args.r_matrix,
        "g": g,
        "n": n,
        "codim": codim,
        "relations": [v.to_json() for v in found],
    }
    lines = [f"{len(found)} relation vector(s) for {args.theory} at (g, n) = ({g}, {n}), codim {codim}"]
    for v in found:
        lines.append(f"inputs {list(v.inputs)}  polar basis {v.label}:")
        lines.extend(f"  {c}  [{sid}]" for sid, c in sorted(v.coefficients.items()))
    _emit(args, payload, lines)
    return 0


# graphs -----------------------------------------------------------------------------


def cmd_graphs(args):
    g, n = args.g, args.n
    if g < 0 or n < 0 or 2 * g - 2 + n <= 0:
        raise UsageError(f"(g, n) = ({g}, {n}) is unstable")
    graphs = enumerate_stable_graphs(g, n)
    payload = {
        "g": g,
        "n": n,
        "count": len(graphs),
        "graphs": [dict(x.to_json(), automorphisms=x.automorphism_count) for x in graphs],
    }
    lines = [f"{len(graphs)} stable graphs of type ({g}, {n})"]
    lines.extend(f"  {x!r}  |Aut| = {x.automorphism_count}" for x in graphs)
    _emit(args, payload, lines)
    return 0


# entry point ------------------------------------------------------------------------


def make_parser():
    parser = argparse.ArgumentParser(prog="cohft", description="R-matrices of A_{m+1} and P^m, comparison checks and strata relations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.add_argument("--output", help="write to this path instead of stdout")

    p = sub.add_parser("rmatrix", help="compute an R-matrix")
    p.add_argument("--side", choices=["A", "P", "K"], default="A", help="A_{m+1}, P^m, or P^m in the lambda chart")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--z-order", type=int, default=5)
    p.add_argument("--q-order", type=int, default=5)
    p.add_argument("--construction", choices=["qde", "saddle"], default="qde")
    p.add_argument("--t", help="comma-separated t^1..t^m (A-side specialization)")
    p.add_argument("--lambdas", help="comma-separated weights (P-side specialization)")
    p.add_argument("--airy", action="store_true")
    common(p)
    p.set_defaults(func=cmd_rmatrix)

    p = sub.add_parser("verify", help="run verification checks")
    p.add_argument("checks", nargs="+", choices=sorted(CHECKS) + ["all"])
    p.add_argument("--m", type=int, help="restrict thm1/thm2 to this m")
    p.add_argument("--seed", type=int, help="adds a random specialization to the saddle check")
    p.add_argument("--timings", action="store_true", help="include wall-clock seconds (breaks byte-identical output)")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("relations", help="relation vectors from polar parts")
    p.add_argument("--theory", choices=sorted(THEORIES), default="3spin")
    p.add_argument("--r-matrix", choices=["spin", "identity"], default="spin")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--codim", type=int, required=True)
    p.add_argument("--inputs", help="comma-separated flat indices a_1..a_n (default: all sorted tuples)")
    common(p)
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("graphs", help="enumerate stable graphs")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_graphs)
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, ArithmeticError) as exc:
        # bad flags, unstable (g, n) and non-semisimple configurations
        print(f"error: {exc}", file=sys.stderr)
        return 2


__all__ = ["main", "make_parser", "run_checks"]
