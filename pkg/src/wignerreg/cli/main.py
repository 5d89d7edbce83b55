"""``wignerreg`` command line.

Exit codes: 0 success or all checks passed, 1 a verification failed,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

import numpy as np

from ..opalg.kernel import KernelSpec, cohen_bar, cohen_tilde, q1_tilde
from ..opalg.substitution import wig_bar, wig_bar_inverse, wig_tilde, wig_tilde_inverse
from ..regularity.verdict import verdict
from ..transforms import io as gio
from ..transforms.fourier import cohen_apply, cohen_inverse, fourier, inverse_fourier, wig, wig_inverse
from ..transforms.grid import Grid
from ..transforms.operators import apply_operator
from ..transforms.testfunctions import SAMPLERS, sample
from ..weights import WeightQuadruple, parse_direct_sum, parse_weight, young_conjugate
from .parser import ParseError, parse_kernel, parse_operator
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

MODES = ("bar", "tilde", "tilde-inv", "bar-inv", "cohen-bar", "cohen-tilde", "q1")
GRID_ACTIONS = ("sample", "info", "csv", "fourier", "ifourier", "wig", "wig-inv", "cohen", "cohen-inv", "apply")


class UsageError(Exception):
    pass


def _operator_and_kernel(src: str, kernel: Optional[str], n_dim: Optional[int]):
    expr = parse_operator(src, n_dim)
    k = parse_kernel(kernel, n_dim) if kernel else None
    n = max([expr.dim_n, n_dim or 1] + ([k.dim_n] if k else []))
    if k is not None and k.dim_n < n:
        k = parse_kernel(kernel, n)
    return expr.to_ncpoly(n), k, n


def cmd_transform(args) -> int:
    P, k, _ = _operator_and_kernel(args.op, args.kernel, args.n_dim)
    if args.mode.startswith("cohen") or args.mode == "q1":
        if k is None:
            raise UsageError(f"mode {args.mode} needs --kernel")
    if args.mode == "q1" and k.q is None:
        raise UsageError("mode q1 needs a kernel with q=...")
    fn = {
        "bar": lambda: wig_bar(P),
        "tilde": lambda: wig_tilde(P),
        "tilde-inv": lambda: wig_tilde_inverse(P),
        "bar-inv": lambda: wig_bar_inverse(P),
        "cohen-bar": lambda: cohen_bar(P, k),
        "cohen-tilde": lambda: cohen_tilde(P, k),
        "q1": lambda: q1_tilde(P, k),
    }[args.mode]
    print(fn().text())
    return EXIT_OK


def _quadruple(omega: str, sigma: str, n: int) -> WeightQuadruple:
    return WeightQuadruple(parse_direct_sum(omega, 2 * n), parse_direct_sum(sigma, 2 * n))


def cmd_regularity(args) -> int:
    P, k, n = _operator_and_kernel(args.op, args.kernel, args.n_dim)
    q = _quadruple(args.omega, args.sigma, n)
    v = verdict(P, q, k, box_radius=args.box, max_depth=args.depth)
    print(v.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    rows = run_suite(args.suite, n=args.n, L=args.L, tol=args.tol)
    for r in rows:
        print(r.line())
    ok = all(r.passed for r in rows)
    print(f"{'PASS' if ok else 'FAIL'} suite {args.suite}: {sum(r.passed for r in rows)}/{len(rows)} checks")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_weights(args) -> int:
    w = parse_weight(args.spec)
    values = []
    for part in args.conjugate:
        values.extend(float(s) for s in part.split(",") if s.strip())
    out = {"spec": w.spec(), "K": w.K, "a": w.a, "b": w.b, "conjugate": []}
    for s in values:
        out["conjugate"].append({"s": s, "phi_star": young_conjugate(w, s, args.tol)})
    if args.json:
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        for row in out["conjugate"]:
            print(f"{row['s']:.12g} {row['phi_star']:.12g}")
    return EXIT_OK


def _need_input(args):
    if not args.input:
        raise UsageError(f"grid {args.action} needs --input")
    return gio.load(args.input)


def _emit(F, args) -> int:
    if args.output:
        gio.save(F, args.output)
    if args.csv:
        gio.write_csv(F, args.csv)
    if not args.output and not args.csv:
        _print_info(F)
    return EXIT_OK


def _print_info(F):
    axes = [{"n": a.n, "L": a.half_width, "tag": a.tag} for a in F.axes]
    print(json.dumps({"axes": axes, "max_abs": F.max_abs()}, sort_keys=True))


def cmd_grid(args) -> int:
    act = args.action
    if act == "sample":
        if args.fn not in SAMPLERS:
            raise UsageError(f"unknown test function {args.fn!r}; choose from {sorted(SAMPLERS)}")
        grid = Grid.uniform(args.dim, args.n, args.L)
        params = {}
        if args.fn == "hermite":
            params["orders"] = [int(v) for v in (args.orders or "0").split(",")] * 1
            if len(params["orders"]) == 1:
                params["orders"] = params["orders"] * args.dim
        elif args.a is not None:
            params["a"] = args.a
        return _emit(sample(args.fn, grid, **params), args)
    F = _need_input(args)
    if act == "info":
        _print_info(F)
        return EXIT_OK
    if act == "csv":
        if not args.csv:
            raise UsageError("grid csv needs --csv PATH")
        gio.write_csv(F, args.csv)
        return EXIT_OK
    if act == "fourier":
        return _emit(fourier(F), args)
    if act == "ifourier":
        return _emit(inverse_fourier(F), args)
    if act == "wig":
        return _emit(wig(F), args)
    if act == "wig-inv":
        return _emit(wig_inverse(F), args)
    if act in ("cohen", "cohen-inv"):
        if not args.kernel:
            raise UsageError(f"grid {act} needs --kernel")
        k = parse_kernel(args.kernel, F.dim // 2)
        if act == "cohen":
            return _emit(cohen_apply(k, F, use_q=args.use_q), args)
        if args.use_q:
            k = k.certify_q()
        return _emit(cohen_inverse(k, F, use_q=args.use_q), args)
    if act == "apply":
        if not args.op:
            raise UsageError("grid apply needs --op")
        if F.dim % 2:
            raise UsageError("operators act on grids with an even number of axes")
        P = parse_operator(args.op, F.dim // 2).to_ncpoly(F.dim // 2)
        return _emit(apply_operator(P, F), args)
    raise UsageError(f"unknown grid action {act!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wignerreg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", help="conjugate an operator and print its canonical form")
    t.add_argument("--op", required=True, help='operator expression, e.g. "(Dx + y/2)^2"')
    t.add_argument("--mode", required=True, choices=MODES)
    t.add_argument("--kernel", help='kernel spec, e.g. "p1=xi^2+eta^2;q=1+xi1^2"')
    t.add_argument("--n-dim", type=int, help="dimension N (default: largest index used)")
    t.set_defaults(func=cmd_transform)

    r = sub.add_parser("regularity", help="print a regularity verdict as JSON")
    r.add_argument("--op", required=True)
    r.add_argument("--omega", required=True, help="weight list, e.g. gevrey:2 or gevrey:2,logpow:1")
    r.add_argument("--sigma", required=True)
    r.add_argument("--kernel")
    r.add_argument("--n-dim", type=int)
    r.add_argument("--box", type=float, default=10.0, help="search box radius for nonvanishing")
    r.add_argument("--depth", type=int, default=14, help="branch and bound depth")
    r.set_defaults(func=cmd_regularity)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=sorted(SUITES))
    v.add_argument("--n", type=int, help="grid points per axis (suite default when omitted)")
    v.add_argument("--L", type=float, help="grid half width (suite default when omitted)")
    v.add_argument("--tol", type=float, help="override every per-check tolerance")
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("weights", help="evaluate Young conjugates of a weight")
    w.add_argument("--spec", required=True, help="e.g. gevrey:2 or logpow:1")
    w.add_argument("--conjugate", required=True, nargs="+", help="values s >= 0 (space or comma separated)")
    w.add_argument("--tol", type=float, default=1e-9)
    w.add_argument("--json", action="store_true")
    w.set_defaults(func=cmd_weights)

    g = sub.add_parser("grid", help="sample and transform grid functions in the binary format")
    g.add_argument("action", choices=GRID_ACTIONS)
    g.add_argument("--input")
    g.add_argument("--output")
    g.add_argument("--csv", help="also write CSV to this path")
    g.add_argument("--fn", default="gaussian", help="test function for sample")
    g.add_argument("--dim", type=int, default=2)
    g.add_argument("--n", type=int, default=256)
    g.add_argument("--L", type=float, default=12.0)
    g.add_argument("--a", type=float, help="Gaussian width parameter")
    g.add_argument("--orders", help="Hermite orders, comma separated")
    g.add_argument("--kernel")
    g.add_argument("--use-q", action="store_true", help="use the kappa_1 kernel q * kappa")
    g.add_argument("--op", help="operator for grid apply")
    g.set_defaults(func=cmd_grid)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
