"""Command-line entry point: ``trainalg coset ...``, ``trainalg verify ...``, ``trainalg spherical ...``.

Exit codes: 0 success or all trials passed, 1 a property failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .exact_linalg import FieldMismatchError, Matrix
from .relations import ProjectivePoint, char_function
from .repharness import SphericalParams, spherical_phi
from .suites import SUITES, SuiteConfig, run_suite
from .train import (
    DoubleCoset,
    coset_compose,
    coset_eq,
    coset_invariants,
    involution,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load(source: str):
    try:
        text = sys.stdin.read() if source == "-" else Path(source).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: invalid JSON ({exc})") from exc


def _load_coset(source: str) -> DoubleCoset:
    obj = _load(source)
    try:
        c = DoubleCoset.from_json(obj)
    except (KeyError, TypeError, ValueError, FieldMismatchError) as exc:
        raise InputError(f"{source}: not a double coset ({exc})") from exc
    try:
        c.validate()
    except ValueError as exc:
        raise InputError(f"{source}: {exc}") from exc
    return c


def _load_matrix(source: str) -> Matrix:
    obj = _load(source)
    # accept a bare matrix, a list holding one matrix, or a coset/element wrapper
    if isinstance(obj, dict) and "rep" in obj:
        obj = obj["rep"]
    if isinstance(obj, list) and len(obj) == 1 and isinstance(obj[0], dict):
        obj = obj[0]
    try:
        return Matrix.from_json(obj)
    except (KeyError, TypeError, ValueError, FieldMismatchError) as exc:
        raise InputError(f"{source}: not a matrix ({exc})") from exc


def _emit(obj, out: str | None = None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    print(text)


def cmd_coset(args) -> int:
    op = args.op
    if op == "mul":
        g, h = _load_coset(args.inputs[0]), _load_coset(args.inputs[1])
        _emit(coset_compose(g, h, m=args.m).to_json())
    elif op == "eq":
        a, b = _load_coset(args.inputs[0]), _load_coset(args.inputs[1])
        if a.pair != b.pair or a.alpha != b.alpha or a.beta != b.beta:
            raise InputError("cosets must share pair, alpha and beta")
        _emit(coset_eq(a, b).to_json())
    elif op == "inv":
        _emit(involution(_load_coset(args.inputs[0])).to_json())
    elif op == "chi":
        c = _load_coset(args.inputs[0])
        try:
            lam = ProjectivePoint.parse(args.lam)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad --lambda {args.lam!r}: {exc}") from exc
        rel = char_function(c, lam)
        _emit({"lambda": str(lam), **rel.to_json()})
    elif op == "invariants":
        _emit(coset_invariants(_load_coset(args.inputs[0])).to_json())
    return EXIT_OK


def _check_arity(args) -> None:
    need = 2 if args.op in ("mul", "eq") else 1
    if len(args.inputs) != need:
        raise InputError(f"coset {args.op} takes {need} input(s), got {len(args.inputs)}")


def cmd_verify(args) -> int:
    cfg = SuiteConfig(args.suite, trials=args.trials, seed=args.seed, max_support=args.max_support,
                      max_index=args.max_index, height=args.height, n=args.n, d=args.d,
                      model=args.model, pair=args.pair)
    report = run_suite(cfg).to_json()
    _emit(report, args.out)
    if args.plot:
        from .plotting import plot_suite_report
        plot_suite_report(report, args.plot)
    return EXIT_OK if report["pass"] else EXIT_VIOLATION


def _floats(values) -> list[float]:
    out = []
    for v in values or []:
        for part in str(v).split(","):
            part = part.strip()
            if part:
                try:
                    out.append(float(part))
                except ValueError as exc:
                    raise InputError(f"not a number: {part!r}") from exc
    return out


def cmd_spherical(args) -> int:
    m = _load_matrix(args.matrix)
    if m.rows != m.cols:
        raise InputError("matrix must be square")
    if args.sigma not in (0, 1):
        raise InputError("--sigma must be 0 or 1")
    try:
        a = float(args.a)
    except ValueError as exc:
        raise InputError(f"--a: not a number: {args.a!r}") from exc
    params = SphericalParams(tuple(_floats(args.s)), a, args.sigma)
    try:
        value = spherical_phi(params, m)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit({"re": value.real, "im": value.imag}, args.out)
    if args.plot:
        from .plotting import plot_spherical
        plot_spherical(params, m, args.plot)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trainalg", description="Exact double-coset algebra and checks.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coset", help="products, equality, inverse, characteristic function, invariants")
    c.add_argument("op", choices=["mul", "eq", "inv", "chi", "invariants"])
    c.add_argument("inputs", nargs="+", help="coset JSON files ('-' reads stdin)")
    c.add_argument("--lambda", dest="lam", default="2", help="point of the projective line, e.g. 2, 5/2, inf")
    c.add_argument("--m", type=int, default=None, help="Theta block size for mul (default: max support)")
    c.set_defaults(func=cmd_coset)

    v = sub.add_parser("verify", help="run a seeded verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--n", type=int, default=10, help="truncation dimension (repcat, theta_limit)")
    v.add_argument("--d", type=int, default=2, help="tensor degree (repcat, theta_limit)")
    v.add_argument("--max-support", type=int, default=3)
    v.add_argument("--max-index", type=int, default=2)
    v.add_argument("--height", type=int, default=2, help="entry height of random samples")
    v.add_argument("--model", choices=["truncated", "ell2"], default="truncated",
                   help="fixed-vector model for repcat and theta_limit")
    v.add_argument("--pair", default=None, help="pair preset name for suites that accept one")
    v.add_argument("--out", default=None, help="also write the JSON report to this file")
    v.add_argument("--plot", default=None, help="write a figure of the per-trial results")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("spherical", help="evaluate the spherical function at a rational matrix")
    s.add_argument("matrix", help="matrix JSON file ('-' reads stdin)")
    s.add_argument("--s", nargs="*", default=[], help="parameters s_1 ... s_p (space or comma separated)")
    s.add_argument("--a", default="0")
    s.add_argument("--sigma", type=int, default=0)
    s.add_argument("--out", default=None)
    s.add_argument("--plot", default=None, help="write Phi along a path through the matrix")
    s.set_defaults(func=cmd_spherical)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.command == "coset":
            _check_arity(args)
        return args.func(args)
    except InputError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, TypeError) as exc:
        # preconditions such as index mismatch or a singular representative
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
