"""Command-line front end.

Exit codes:
  0  success / every check passed
  1  a mathematical check failed (not a homomorphism, not an isomorphism,
     scaling or orthogonality violated, scan FAIL)
  2  usage, parse, reference or invariant error in the input
  3  TheoremViolation: a verified isomorphism is not a conjugation
"""

from __future__ import annotations

import argparse
import json
import sys

from . import errors
from .baermap import (
    construct_conjugation, is_minimized, orthogonality_check, recover_conjugator,
    sm_is_homomorphism, sm_minimize, trace_scaling_factor,
)
from .exactalg import RingDescriptor, format_matrix, is_prime, mat_mul
from .oracle import DEFAULT_CAP, ScanConfig, exhaustive_isomorphism_scan
from .session import load, parse_matrix, save
from .transring import check_ring_axioms, is_total

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_THEOREM = 3

_MATH_FAILURES = (errors.NotIsomorphism, errors.PreconditionViolated, errors.ScalingViolation,
                  errors.Singular, errors.RankLoss)
_INPUT_FAILURES = (errors.ParseError, errors.ReferenceError, errors.InvariantError,
                   errors.ShapeMismatch, errors.DescriptorMismatch, errors.SizeGuard,
                   errors.WrongDescriptor, OSError)


def _out(text=""):
    print(text)


def cmd_check_ring(args) -> int:
    session = load(args.file)
    s = session.system(args.system)
    report = check_ring_axioms(s, args.trials, args.seed)
    _out(f"system {args.system}: n={s.n} k={s.k} F={format_matrix(s.F)}")
    _out(report.summary())
    _out(f"total: {'yes' if is_total(s) else 'no'}")
    return EXIT_OK if report else EXIT_CHECK_FAILED


def cmd_make_conj(args) -> int:
    session = load(args.file)
    s = session.system(args.system)
    alpha = parse_matrix(args.alpha, session.descriptor)
    beta = parse_matrix(args.beta, session.descriptor)
    phi = construct_conjugation(s, alpha, beta)
    target = args.target or f"{args.system}_conj"
    session.add_system(target, phi.target)
    session.add_map(args.map, args.system, target, phi)
    save(session, args.output)
    _out(f"map {args.map}: {args.system} -> {target}")
    _out(f"G = {format_matrix(phi.target.F)}")
    _out(f"wrote {args.output}")
    return EXIT_OK


def cmd_verify_hom(args) -> int:
    session = load(args.file)
    phi = session.map(args.map)
    report = sm_is_homomorphism(phi)
    _out(f"map {args.map}: {len(phi.terms)} terms")
    _out(report.summary())
    return EXIT_OK if report else EXIT_CHECK_FAILED


def cmd_minimize(args) -> int:
    session = load(args.file)
    phi = session.map(args.map)
    reduced = sm_minimize(phi)
    session.replace_map(args.map, reduced)
    save(session, args.output)
    _out(f"map {args.map}: {len(phi.terms)} -> {len(reduced.terms)} terms")
    _out(f"independent over D: {'yes' if is_minimized(reduced) else 'no'}")
    _out(f"wrote {args.output}")
    return EXIT_OK


def cmd_trace_factor(args) -> int:
    session = load(args.file)
    phi = sm_minimize(session.map(args.map))
    factor = trace_scaling_factor(phi)
    orth = orthogonality_check(phi)
    _out(f"map {args.map}: {len(phi.terms)} terms after minimization")
    _out(orth.summary())
    _out(f"trace factor: {factor}")
    return EXIT_OK if orth else EXIT_CHECK_FAILED


def cmd_recover(args) -> int:
    session = load(args.file)
    phi = session.map(args.map)
    src, tgt = session.map_ends[args.map]
    alpha, beta = recover_conjugator(phi)
    check = mat_mul(mat_mul(beta, phi.target.F), alpha)
    ok = check == phi.source.F
    _out(f"map {args.map}: {src} -> {tgt}")
    _out(f"alpha = {format_matrix(alpha)}")
    _out(f"beta = {format_matrix(beta)}")
    _out(f"B G A = {format_matrix(check)}")
    _out(f"F = {format_matrix(phi.source.F)}")
    _out(f"beta(f) o alpha = f: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_scan(args) -> int:
    if not is_prime(args.p):
        raise errors.WrongDescriptor(f"scan needs a prime field, got modulus {args.p}")
    d = RingDescriptor.prime_field(args.p)
    F = parse_matrix(args.f, d)
    G = parse_matrix(args.g, d)
    cfg = ScanConfig(args.p, args.n, args.k, F, G, args.cap)
    cfg.systems()
    report = exhaustive_isomorphism_scan(cfg, workers=args.workers)
    _out(report.text())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fendring", description="Finitary endomorphism rings over division rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-ring", help="check ring axioms and totality of a dual system")
    p.add_argument("file")
    p.add_argument("system")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check_ring)

    p = sub.add_parser("make-conj", help="build the conjugation map of (alpha, beta)")
    p.add_argument("file")
    p.add_argument("system")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--map", default="phi", help="name of the new map (default: phi)")
    p.add_argument("--target", help="name of the target system (default: <system>_conj)")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_make_conj)

    p = sub.add_parser("verify-hom", help="check that a map is a ring homomorphism")
    p.add_argument("file")
    p.add_argument("map")
    p.set_defaults(func=cmd_verify_hom)

    p = sub.add_parser("minimize", help="reduce a map to independent term families")
    p.add_argument("file")
    p.add_argument("map")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("trace-factor", help="print the trace scaling factor of a homomorphism")
    p.add_argument("file")
    p.add_argument("map")
    p.set_defaults(func=cmd_trace_factor)

    p = sub.add_parser("recover", help="recover the conjugator of an isomorphism")
    p.add_argument("file")
    p.add_argument("map")
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("scan", help="exhaustive isomorphism scan over F_p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--f", required=True, help="source evaluation matrix, e.g. '[[1, 0]]'")
    p.add_argument("--g", required=True, help="target evaluation matrix")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", help="also write a JSON result file")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except errors.TheoremViolation as exc:
        print(f"TheoremViolation: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except _MATH_FAILURES as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except _INPUT_FAILURES as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
