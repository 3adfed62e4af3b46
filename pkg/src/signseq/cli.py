"""Command-line interface.

Exit codes: 0 on success, 1 for invalid input or usage, 2 when a certified
bound is violated (which would be a bug).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .adversary import SQRT3, AdversaryConfig, build_lower_bound_sequence, length_bound, verify_adversary
from .highdim import VERIFY_CAP, euclidean_family, maxnorm_family, verify_family
from .norms import DEFAULT_TOL, NormSpec, parse_norm, random_unit_ball_vectors
from .oracle import ORACLE_CAP, all_patterns_exceed, brute_force_minmax
from .signer import greedy_sign, sign_result_problems, sign_sequence
from .svg import render_path
from .vectorfile import read_vectors, write_vectors

EXIT_OK, EXIT_INPUT, EXIT_BOUND = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _norm_doc(spec: NormSpec) -> dict:
    doc = {"kind": spec.kind}
    if spec.kind == "polygon":
        doc["vertices"] = [list(p) for p in spec.vertices]
    return doc


def _emit(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def run_report(vectors, raw: str, spec: NormSpec, result, tol: float, seconds: float) -> dict:
    return {
        "input_sha256": hashlib.sha256(raw.encode()).hexdigest(),
        "n": len(vectors),
        "dimension": len(vectors[0]) if vectors else None,
        "norm": _norm_doc(spec),
        "algorithm": result.algorithm,
        "tol": tol,
        "signs": result.signs,
        "partial_norms": result.partial_norms,
        "max_partial_norm": result.max_partial_norm,
        "certified_bound": result.certified_bound,
        "final_radius": result.final_radius,
        "warnings": [w.as_dict() for w in result.warnings],
        "timing_seconds": seconds,
    }


def cmd_sign(args) -> int:
    spec = parse_norm(args.norm)
    vectors, raw = read_vectors(args.input)
    start = time.perf_counter()
    if args.algorithm == "trapping":
        result = sign_sequence(vectors, spec, tol=args.tol)
    else:
        result = greedy_sign(vectors, spec)
    seconds = time.perf_counter() - start
    report = run_report(vectors, raw, spec, result, args.tol, seconds)
    _emit(json.dumps(report, indent=2) + "\n", args.output)

    if args.svg:
        if vectors and len(vectors[0]) != 2:
            print("warning: --svg needs two-dimensional vectors; skipped", file=sys.stderr)
        else:
            Path(args.svg).write_text(render_path(vectors, result.signs, spec, result.certified_bound))

    problems = sign_result_problems(vectors, result, spec)
    if problems:
        for p in problems:
            print(f"internal error: {p}", file=sys.stderr)
        return EXIT_BOUND
    return EXIT_OK


def cmd_adversary(args) -> int:
    seq = build_lower_bound_sequence(AdversaryConfig(args.delta))
    header = f"lower-bound sequence, delta={args.delta!r}"
    write_vectors(seq.vectors, args.output, header)
    # keep stdout clean when the vectors go there
    out = sys.stdout if args.output not in (None, "-") else sys.stderr
    n = len(seq.vectors)
    print(f"n: {n}", file=out)
    print(f"length bound: 3 + (sqrt(2) - 1)/delta = {length_bound(args.delta):.6f}", file=out)
    if n <= args.cap:
        ok = verify_adversary(seq, args.cap)
        verdict = "PASS" if ok else "FAIL"
        print(f"verification: {verdict} >= sqrt(3) - {args.delta:g} = {SQRT3 - args.delta:.12f}", file=out)
        if not ok:
            return EXIT_BOUND
    else:
        print(f"verification: skipped (n = {n} > cap {args.cap})", file=out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    spec = parse_norm(args.norm)
    vectors, _ = read_vectors(args.input)
    result = brute_force_minmax(vectors, spec, cap=args.cap)
    print(f"value: {result.value!r}")
    print(f"witness: {json.dumps(result.witness_signs)}")
    print(f"nodes: {result.nodes_explored}")
    if args.threshold is not None:
        exceed = all_patterns_exceed(vectors, spec, args.threshold, cap=args.cap)
        print(f"ALL PATTERNS EXCEED: {str(exceed).lower()}")
    return EXIT_OK


def cmd_highdim(args) -> int:
    fam = maxnorm_family(args.dim) if args.norm == "max" else euclidean_family(args.dim)
    if args.verify:
        ok = verify_family(fam, cap=VERIFY_CAP)
        admissible = "unverified (cap)" if ok is None else ("yes" if ok else "no")
    else:
        admissible = "not checked"
    rows = [
        ("d", "norm", "admissible", "sum_norm", "lower_bound"),
        (str(fam.dimension), fam.kind, admissible, f"{fam.sum_norm:.6f}", f"{fam.rate * (args.dim - 1):.6f}"),
    ]
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    for r in rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    if args.output:
        write_vectors(fam.vectors, args.output, f"{fam.kind}-norm admissible family, d={fam.dimension}")
    return EXIT_OK


def cmd_random(args) -> int:
    spec = parse_norm(args.norm)
    seed = getattr(args, "seed", 0)
    rng = np.random.default_rng(seed)
    vectors = random_unit_ball_vectors(spec, args.n, rng, args.dim)
    write_vectors(vectors, args.output, f"{args.n} random unit-ball vectors, norm={args.norm}, seed={seed}")
    return EXIT_OK


def _positive_float(text: str) -> float:
    x = float(text)
    if not (math.isfinite(x) and x > 0):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return x


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS so a subcommand's copy does not overwrite a top-level --seed
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized input generation")

    parser = _Parser(prog="signseq", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sign", parents=[common], help="sign a vector file")
    p.add_argument("input", help="vector file, or - for stdin")
    p.add_argument("--norm", default="euclidean", help="euclidean, l1, linf or polygon:<file>")
    p.add_argument("--algorithm", choices=("trapping", "greedy"), default="trapping")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--svg", help="write the prefix-sum path as SVG (2D only)")
    p.add_argument("--output", help="write the JSON report here instead of stdout")
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("adversary", parents=[common], help="build the Euclidean lower-bound sequence")
    p.add_argument("--delta", type=_positive_float, required=True)
    p.add_argument("--output", help="vector file to write (default stdout)")
    p.add_argument("--cap", type=int, default=ORACLE_CAP)
    p.set_defaults(func=cmd_adversary)

    p = sub.add_parser("oracle", parents=[common], help="exact minimax over all sign patterns")
    p.add_argument("input")
    p.add_argument("--norm", default="euclidean")
    p.add_argument("--threshold", type=float)
    p.add_argument("--cap", type=int, default=ORACLE_CAP)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("highdim", parents=[common], help="admissible families in R^d")
    p.add_argument("--norm", choices=("max", "euclidean"), default="max")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=cmd_highdim)

    p = sub.add_parser("random", parents=[common], help="random unit-ball vectors (uses --seed)")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--norm", default="euclidean")
    p.add_argument("--output")
    p.set_defaults(func=cmd_random)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"signseq {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
