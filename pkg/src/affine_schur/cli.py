"""
Command-line frontend.

    affine-schur multiply A.txt B.txt [--method cross-check]
    affine-schur rho A.txt
    affine-schur chain -n 3 -r 2
    affine-schur membership X.txt --index 1 [--window 2]
    affine-schur params -n 3 -r 7
    affine-schur phi -n 3 "2:3 5:2 -1:1"
    affine-schur phi-inverse --ambient 3,2,2 --coords 5,6,7
    affine-schur selftest [--only 1,5] [--quick]

``--format json`` switches to newline-delimited JSON records, each carrying a
``schema`` field. Exit status: 0 on success, 1 when a check or cross-check
fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import algebra as alg
from .algebra import AlgebraElement, MethodMismatchError, basis_element, element_from_json, element_to_json
from .cells import b_lambda, chain, d_values_dp, d_values_oracle, membership, rho
from .combinatorics import format_composition, parse_composition
from .matrices import MatrixFormatError, matrix_from_json, matrix_to_json, parse_matrix
from .segments import OmegaPoint, Segment, SegmentMultiset, c_blocks, phi, phi_inverse, scalar, shape
from .selftest import DEFAULT_SEED, run_all

SCHEMA = "affine-schur/1"


class InputError(Exception):
    """Bad command-line input; reported with exit status 2."""


@dataclass
class RunConfig:
    n: int | None = None
    r: int | None = None
    window: int = 2
    method: str = "oracle"
    output: str = "text"
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.window < 0:
            raise InputError("--window must be nonnegative")
        if self.method not in alg.METHODS:
            raise InputError(f"--method must be one of {', '.join(alg.METHODS)}")
        for name in ("n", "r"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise InputError(f"-{name} must be positive")

    def need_nr(self, warn: bool = True) -> tuple[int, int]:
        if self.n is None or self.r is None:
            raise InputError("this command needs -n and -r")
        if warn and (self.n > 4 or self.r > 4):
            print(f"warning: (n, r) = ({self.n}, {self.r}) is past desk scale; expect slow runs", file=sys.stderr)
        return self.n, self.r


class Reporter:
    def __init__(self, config: RunConfig, stream=None):
        self.config = config
        self.stream = stream or sys.stdout

    def emit(self, kind: str, text: str, **record):
        if self.config.output == "json":
            record = {"schema": SCHEMA, "kind": kind, **record}
            print(json.dumps(record, sort_keys=True), file=self.stream)
        else:
            print(text, file=self.stream)


# ---------------------------------------------------------------------------
# input helpers


def read_operand(path: str) -> AlgebraElement:
    """A matrix (text or JSON) or an element (JSON with 'terms') from a file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        if text.lstrip().startswith("{"):
            obj = json.loads(text)
            if "terms" in obj:
                return element_from_json(obj)
            return basis_element(matrix_from_json(obj))
        return basis_element(parse_matrix(text))
    except (MatrixFormatError, json.JSONDecodeError, KeyError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def parse_segments(text: str) -> SegmentMultiset:
    """'value:length' tokens separated by whitespace, e.g. '2:3 1/2:1 1+I:2'."""
    segs = []
    for tok in text.split():
        try:
            value, length = tok.rsplit(":", 1)
            segs.append(Segment(scalar(value), int(length)))
        except (ValueError, TypeError) as exc:
            raise InputError(f"bad segment {tok!r}: {exc}") from None
    if not segs:
        raise InputError("no segments given")
    return SegmentMultiset(segs)


def format_element(x: AlgebraElement) -> str:
    if x.is_zero():
        return "0"
    lines = []
    for A, c in sorted(x.items()):
        cells = " ".join(f"({i},{j}):{v}" for (i, j), v in A.entries)
        lines.append(f"{str(c):>6} * e[{cells}]")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands


def cmd_multiply(config: RunConfig, args, out: Reporter) -> int:
    x, y = read_operand(args.left), read_operand(args.right)
    if (x.n, x.r) != (y.n, y.r):
        raise InputError(f"operands live in S^({x.n},{x.r}) and S^({y.n},{y.r})")
    status = 0
    if config.method == "cross-check":
        a, b = alg.multiply(x, y, "oracle"), alg.multiply(x, y, "coset")
        agree = a == b
        status = 0 if agree else 1
        result = a
    else:
        result, agree = alg.multiply(x, y, config.method), None
    text = format_element(result)
    if result.is_zero():
        text += "\nnote: the product vanishes (column sums of the left factor never match row sums of the right)"
    if agree is not None:
        text += f"\ncross-check: {'oracle and coset rule agree' if agree else 'METHODS DISAGREE'}"
    out.emit("product", text, method=config.method, product=element_to_json(result), agree=agree,
             zero=result.is_zero())
    return status


def cmd_rho(config: RunConfig, args, out: Reporter) -> int:
    x = read_operand(args.matrix)
    if len(x) != 1:
        raise InputError("rho expects a single matrix")
    (A,) = x.support()
    d = d_values_dp(A)
    agree = d == d_values_oracle(A)
    label = rho(A)
    text = (
        f"d = {format_composition(d)}\n"
        f"rho = {format_composition(label.partition)}\n"
        f"chain index = {label.index}\n"
        f"dp/oracle agreement: {'yes' if agree else 'NO'}"
    )
    out.emit("rho", text, matrix=matrix_to_json(A), d=list(d), rho=list(label.partition),
             index=label.index, agree=agree)
    return 0 if agree else 1


def cmd_chain(config: RunConfig, args, out: Reporter) -> int:
    n, r = config.need_nr()
    for J in chain(n, r):
        gens = ", ".join(format_composition(mu) for mu in J.generators)
        out.emit("ideal", f"J_{J.index}: lambda = {format_composition(J.label)}; generators l_mu for mu in {{{gens}}}",
                 index=J.index, label=list(J.label), generators=[list(mu) for mu in J.generators])
    return 0


def cmd_membership(config: RunConfig, args, out: Reporter) -> int:
    x = read_operand(args.element)
    ideals = chain(x.n, x.r)
    if not 1 <= args.index <= len(ideals):
        raise InputError(f"--index must lie in [1, {len(ideals)}]")
    cert = membership(x, ideals[args.index - 1], config.window)
    lines = [f"{cert.describe()} in J_{args.index} (window {config.window})"]
    for t in cert.witness:
        lines.append(f"  {t.coefficient} * e_B l_{format_composition(t.mu)} e_C  B={t.left!r}  C={t.right!r}")
    if cert.confirmed:
        lines.append(f"  re-verified product sha256 {cert.product_hash}")
    out.emit("certificate", "\n".join(lines), **cert.to_json())
    return 0


def cmd_params(config: RunConfig, args, out: Reporter) -> int:
    n, r = config.need_nr(warn=False)
    for lam, empty in c_blocks(n, r):
        pres = b_lambda(lam)
        text = f"{format_composition(lam)}: B = {pres}; C block {'empty' if empty else 'nonempty'}"
        out.emit("block", text, partition=list(lam), variables=pres.variables,
                 inverted=list(pres.inverted), c_empty=empty)
    return 0


def _emit_point(out: Reporter, b: OmegaPoint, s: SegmentMultiset, kind: str):
    text = (
        f"segments: {' '.join(f'{seg.value}:{seg.length}' for seg in s.segments)}\n"
        f"shape: {format_composition(shape(s))}\n"
        f"point: ambient {format_composition(b.ambient)} coords ({', '.join(str(c) for c in b.coords)})\n"
        f"in Omega: {'yes' if b.in_omega() else 'no'}"
    )
    out.emit(kind, text, segments=s.to_json(), point=b.to_json(), in_omega=b.in_omega())


def cmd_phi(config: RunConfig, args, out: Reporter) -> int:
    s = parse_segments(args.segments)
    n = config.n if config.n is not None else max(seg.length for seg in s.segments)
    try:
        b = phi(s, n)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit_point(out, b, s, "phi")
    return 0


def cmd_phi_inverse(config: RunConfig, args, out: Reporter) -> int:
    try:
        ambient = parse_composition(args.ambient)
        coords = tuple(scalar(c) for c in args.coords.split(","))
        b = OmegaPoint(ambient, coords)
        s = phi_inverse(b, len(ambient))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit_point(out, b, s, "phi-inverse")
    return 0


def cmd_selftest(config: RunConfig, args, out: Reporter) -> int:
    only = set(args.only.split(",")) if args.only else None
    results = run_all(config.seed, only=only, skip_tags={"slow"} if args.quick else None)
    for res in results:
        out.emit("check", res.line(), seed=config.seed, **res.record())
    failed = sum(not res.passed for res in results)
    out.emit("summary", f"{len(results) - failed}/{len(results)} checks passed", seed=config.seed,
             total=len(results), failed=failed)
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", type=int, default=argparse.SUPPRESS, help="period n")
    common.add_argument("-r", type=int, default=argparse.SUPPRESS, help="weight r")
    common.add_argument("--window", type=int, default=argparse.SUPPRESS, help="spread bound W for witnesses (default 2)")
    common.add_argument("--method", choices=alg.METHODS, default=argparse.SUPPRESS, help="product rule")
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS, help="output format")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for sampled checks")

    parser = argparse.ArgumentParser(prog="affine-schur", parents=[common],
                                     description="Exact computations in the affine Schur algebra at v = 1.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("multiply", parents=[common], help="multiply two matrices or elements")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_multiply)

    p = sub.add_parser("rho", parents=[common], help="d-values, cell label and chain index of a matrix")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("chain", parents=[common], help="list the ideal chain J_1 <= ... <= J_t")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("membership", parents=[common], help="certify membership in J_i")
    p.add_argument("element")
    p.add_argument("--index", type=int, required=True, help="chain index i")
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("params", parents=[common], help="partition blocks, B_lambda and empty C blocks")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("phi", parents=[common], help="map a segment multiset to its Omega point")
    p.add_argument("segments", help="whitespace separated value:length tokens")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("phi-inverse", parents=[common], help="recover segments from an Omega point")
    p.add_argument("--ambient", required=True, help="ambient partition, comma separated")
    p.add_argument("--coords", required=True, help="coordinates, comma separated")
    p.set_defaults(func=cmd_phi_inverse)

    p = sub.add_parser("selftest", parents=[common], help="run the built-in check suites")
    p.add_argument("--only", help="comma separated check keys")
    p.add_argument("--quick", action="store_true", help="skip the slow associativity sweep")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None, stream=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            n=getattr(args, "n", None),
            r=getattr(args, "r", None),
            window=getattr(args, "window", 2),
            method=getattr(args, "method", "oracle"),
            output=getattr(args, "format", "text"),
            seed=getattr(args, "seed", DEFAULT_SEED),
        )
        return args.func(config, args, Reporter(config, stream))
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MethodMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
