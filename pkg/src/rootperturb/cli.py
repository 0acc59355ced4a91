"""Command-line front end.

Exit codes: 0 success, 1 a reproduction check failed, 2 input error,
3 numerical non-convergence.  ``ROOTPERTURB_MAX_ITERS`` overrides the
solver's sweep budget.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import serialize as ser
from .bounds import theorem4_analyze
from .errors import AmbientMismatch, NoConvergence, RootPerturbError
from .example1 import format_checks, run_example1
from .grouping import find_delta_empirically, group_roots, separation_radii
from .multivar import classify_boundary_zero, stability_probe
from .poly import ZERO_POLY, formal_degree
from .rootfind import DEFAULT_TOL, cluster, distinct_roots, roots

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2
EXIT_NO_CONVERGENCE = 3


def _positive(text):
    value = float(text)
    if not value > 0 or not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be a positive number, got {text!r}")
    return value


def _load_poly(path):
    return ser.poly_from_json(ser.load_json(path))


def _default_epsilon(q_roots):
    eps_max = separation_radii(q_roots).eps_max
    return eps_max / 2 if math.isfinite(eps_max) else 1.0


def cmd_roots(args):
    p = _load_poly(args.poly)
    rs = roots(p, args.tol)
    return ser.rootset_to_json(rs, cluster(rs, args.cluster_tol))


def cmd_bounds(args):
    p, q = _load_poly(args.p), _load_poly(args.q)
    if p.n != q.n:
        raise AmbientMismatch(f"ambient degrees differ: p has n={p.n}, q has n={q.n}")
    return ser.bound_report_to_json(theorem4_analyze(p, q, tol=args.tol))


def cmd_group(args):
    p, q = _load_poly(args.p), _load_poly(args.q)
    if p.n != q.n:
        raise AmbientMismatch(f"ambient degrees differ: p has n={p.n}, q has n={q.n}")
    q_roots = distinct_roots(q, args.cluster_tol, args.tol)
    eps = args.epsilon if args.epsilon is not None else _default_epsilon(q_roots)
    dp = formal_degree(p)
    lams = roots(p, args.tol).roots if dp not in (ZERO_POLY, 0) else ()
    g = group_roots(q_roots, lams, eps, len(lams), q_roots.degree)
    return ser.grouping_to_json(g, separation_radii(q_roots))


def cmd_delta_search(args):
    q = _load_poly(args.q)
    q_roots = distinct_roots(q, args.cluster_tol, args.tol)
    eps = args.epsilon if args.epsilon is not None else _default_epsilon(q_roots)
    delta = find_delta_empirically(q, eps, args.trials, args.seed, q_roots, tol=args.tol)
    return {"epsilon": eps, "trials": args.trials, "seed": args.seed, "delta": delta}


def cmd_classify(args):
    f = ser.multipoly_from_json(ser.load_json(args.poly))
    dom = ser.polydomain_from_json(ser.load_json(args.domain))
    alpha = ser.point_from_json(ser.json.loads(args.alpha))
    return ser.classification_to_json(classify_boundary_zero(f, dom, alpha, tol=args.zero_tol))


def cmd_probe(args):
    f = ser.multipoly_from_json(ser.load_json(args.poly))
    dom = ser.polydomain_from_json(ser.load_json(args.domain))
    return ser.probe_to_json(stability_probe(f, dom, args.samples, args.seed))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive, default=DEFAULT_TOL,
                        help="backward-error tolerance of the root solver")
    common.add_argument("--cluster-tol", type=_positive, default=1e-6,
                        help="distance below which roots are treated as one")
    common.add_argument("--output", "-o", help="write JSON here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="rootperturb",
        description="Root perturbation bounds, root grouping and boundary-zero classification.")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("roots", parents=[common], help="all roots of a polynomial")
    s.add_argument("poly")
    s.set_defaults(func=cmd_roots)

    s = sub.add_parser("bounds", parents=[common], help="two-regime bound for a pair p, q")
    s.add_argument("p")
    s.add_argument("q")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("group", parents=[common], help="group the roots of p around those of q")
    s.add_argument("p")
    s.add_argument("q")
    s.add_argument("--epsilon", type=_positive, help="ball radius (default eps_max / 2)")
    s.set_defaults(func=cmd_group)

    s = sub.add_parser("delta-search", parents=[common],
                       help="estimate the admissible perturbation size by bisection")
    s.add_argument("q")
    s.add_argument("--epsilon", type=_positive, help="ball radius (default eps_max / 2)")
    s.add_argument("--trials", type=int, default=16)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_delta_search)

    s = sub.add_parser("classify", parents=[common], help="classify a boundary zero")
    s.add_argument("poly")
    s.add_argument("domain")
    s.add_argument("--alpha", required=True, help='zero as JSON, e.g. "[[0, 0], [1, 0]]"')
    s.add_argument("--zero-tol", type=_positive, default=1e-9,
                   help="how small |f(alpha)| and the restriction certificate must be")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("probe", parents=[common], help="sample for zeros inside a polydomain")
    s.add_argument("poly")
    s.add_argument("domain")
    s.add_argument("--samples", type=int, default=256)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_probe)

    s = sub.add_parser("reproduce-example1", parents=[common],
                       help="rerun the eta = 1e-8 worked example against the published values")
    s.set_defaults(func=None)
    return parser


def _emit(text, output):
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "reproduce-example1":
        checks = run_example1()
        _emit(format_checks(checks), args.output)
        return EXIT_OK if all(c.passed for c in checks) else EXIT_CHECK_FAILED

    try:
        result = args.func(args)
    except NoConvergence as exc:
        _emit(ser.dumps({"converged": False, "error": str(exc),
                         "roots": [[z.real, z.imag] for z in exc.roots],
                         "residuals": list(exc.residuals)}), args.output)
        return EXIT_NO_CONVERGENCE
    except (RootPerturbError, ValueError) as exc:
        print(f"rootperturb: unsupported input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(ser.dumps(result), args.output)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
