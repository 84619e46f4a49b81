"""Command-line front end.

JSON goes to stdout, diagnostics to stderr. Exit codes: 0 success,
1 verification failure, 2 usage, parse or validation error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .assignment import min_trace_bruteforce, min_trace_hungarian
from .birkhoff import birkhoff_decompose, sample_convex, sample_sinkhorn
from .errors import BirkhoffError
from .geometry import ENUM_MAX_N, bounding_ball_radius_enum, bounding_ball_radius_s2, chebyshev_radius
from .matrices import make_doubly_stochastic
from .matrix_io import dumps, format_matrix, read_matrix
from .spectral import check_exponent, schatten_from_values, singular_values
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def _emit(obj) -> None:
    sys.stdout.write(dumps(obj) + "\n")


def cmd_norm(args) -> int:
    A = read_matrix(args.file, args.format)
    p = check_exponent(args.p)
    sv = singular_values(A)
    _emit({"n": A.shape[0], "p": p, "schatten_norm": schatten_from_values(sv, p), "singular_values": sv})
    return EXIT_OK


def cmd_mintrace(args) -> int:
    A = read_matrix(args.file, args.format)
    res = min_trace_bruteforce(A) if args.exact_brute else min_trace_hungarian(A)
    _emit({"value": res.value, "sigma": list(res.assignment), "method": res.method})
    return EXIT_OK


def cmd_radius(args) -> int:
    A = read_matrix(args.file, args.format)
    p = check_exponent(args.p)
    n = A.shape[0]
    if p == 2.0 and not args.enum and args.samples is None:
        rep = bounding_ball_radius_s2(A)
    else:
        if args.samples is None and n > ENUM_MAX_N:
            raise BirkhoffError(f"n = {n} is too large to enumerate; pass --samples for a lower bound")
        rep = bounding_ball_radius_enum(A, p, samples=args.samples, seed=args.seed)
    _emit(
        {
            "n": n,
            "p": rep.p,
            "radius": rep.radius,
            "method": rep.method.value,
            "witness": list(rep.witness.sigma),
            "center": rep.center,
        }
    )
    return EXIT_OK


def cmd_chebyshev(args) -> int:
    rep = chebyshev_radius(args.n, args.p)
    _emit({"n": rep.n, "p": rep.p, "radius": rep.radius, "center": rep.center})
    return EXIT_OK


def cmd_decompose(args) -> int:
    D = make_doubly_stochastic(read_matrix(args.file, args.format), args.tol)
    dec = birkhoff_decompose(D.matrix)
    residual = float(np.linalg.norm(dec.reconstruct() - D.matrix))
    _emit(
        {
            "n": D.n,
            "terms": [{"weight": w, "sigma": list(P.sigma)} for w, P in dec.terms],
            "weight_sum": float(np.sum(dec.weights)),
            "residual": residual,
        }
    )
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.method == "convex":
        D = sample_convex(args.n, args.k, args.seed)
    else:
        D = sample_sinkhorn(args.n, args.seed, args.max_iters, args.tol)
    sys.stdout.write(format_matrix(D.matrix, args.output_format))
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.seed, args.trials)
    _emit(report.to_dict())
    for case in report.per_case:
        if not case.passed:
            print(f"FAIL {case.name}: {case.detail}", file=sys.stderr)
    return EXIT_OK if report.cases_failed == 0 else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="birkhoff-schatten",
        description="Schatten-norm geometry of the Birkhoff polytope.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def matrix_cmd(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help="matrix file (CSV or JSON); '-' reads stdin")
        p.add_argument("--format", choices=("csv", "json"), default=None, help="input format (default: by suffix)")
        return p

    p = matrix_cmd("norm", "Schatten p-norm and singular values")
    p.add_argument("--p", type=float, default=2.0)
    p.set_defaults(func=cmd_norm)

    p = matrix_cmd("mintrace", "minimal trace over permutation matrices")
    p.add_argument("--exact-brute", action="store_true", help="enumerate all n! permutations (n <= 9)")
    p.set_defaults(func=cmd_mintrace)

    p = matrix_cmd("radius", "radius of the smallest ball around the matrix containing the polytope")
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--enum", action="store_true", help="force enumeration over permutations")
    p.add_argument("--samples", type=int, default=None, help="random permutations for a lower bound")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("chebyshev", help="Chebyshev radius and center")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=2.0)
    p.set_defaults(func=cmd_chebyshev)

    p = matrix_cmd("decompose", "Birkhoff decomposition into permutation matrices")
    p.add_argument("--tol", type=float, default=1e-9, help="doubly stochastic validation tolerance")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("sample", help="random doubly stochastic matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("convex", "sinkhorn"), default="convex")
    p.add_argument("--k", type=int, default=None, help="permutations in the convex combination (default n)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=10_000)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--output-format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", help="run the randomized verification suites")
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "k", 0) is None:
        args.k = args.n
    try:
        return args.func(args)
    except (BirkhoffError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
