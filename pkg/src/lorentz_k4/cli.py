"""Command-line entry point: ``lorentz-k4 {check,tables,verify,charge}``."""
from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import checker, pdeverify
from .k4 import ELEMENT_ORDER, TABLE_ORDER, K4Charge, irrep_sign
from .tensors import QUARTET_LABELS, VectorRepKind, derived_quartet_table, enumerate_consistent_vector_reps, infer_charge

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2
MINUS = "−"
VEC = "⃗"


def _sign(s: int) -> str:
    return "1" if s > 0 else f"{MINUS}1"


def _vector_rep(cv) -> str:
    return f"({cv[0]}, {cv[1]}{VEC})"


def render_tables() -> str:
    names = [str(g) for g in ELEMENT_ORDER]
    lines = ["K4 multiplication", "    " + " ".join(f"{n:>2}" for n in names)]
    for a in ELEMENT_ORDER:
        lines.append(f"{str(a):>2}: " + " ".join(f"{str(a * b):>2}" for b in ELEMENT_ORDER))
    lines += ["", "Irreducible characters (columns " + " ".join(names) + ")"]
    for r in TABLE_ORDER:
        lines.append(f"ρ_{r}: " + " ".join(_sign(irrep_sign(r, g)) for g in ELEMENT_ORDER))
    lines += ["", "Quartet products of vector kinds"]
    table = derived_quartet_table()
    kinds = list(VectorRepKind)
    lines.append("     " + " ".join(f"{k.short:>2}" for k in kinds))
    for a in kinds:
        lines.append(f"{a.short:>2}:  " + " ".join(f"{str(table[a, b]):>2}" for b in kinds))
    lines += ["", "Consistent four-vector representations"]
    for kind, cv in zip(kinds, enumerate_consistent_vector_reps()):
        lines.append(f"{kind.short} ({kind.name.lower()}, label {kind.quartet_label}): {_vector_rep(cv)}")
    return "\n".join(lines) + "\n"


def _read_model_text(path: str) -> str:
    # bare names like "maxwell.refl" fall back to the shipped corpus
    if not os.path.exists(path) and os.sep not in path:
        shipped = checker.corpus_path(path)
        if shipped.is_file():
            return shipped.read_text(encoding="utf-8")
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_check(args) -> int:
    try:
        source = _read_model_text(args.path)
        model = checker.parse(source, checker.builtin_prelude() if args.prelude else None)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except checker.ParseError as exc:
        print(f"{args.path}:{exc}", file=sys.stderr)
        return EXIT_ERROR
    report = checker.check(model)
    out = report.to_json() if args.json else report.render()
    if out:
        print(out)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_tables(args) -> int:
    sys.stdout.write(render_tables())
    return EXIT_OK


def _parse_grids(text: str) -> list[int]:
    try:
        grids = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid list {text!r}") from None
    if not grids:
        raise argparse.ArgumentTypeError("empty grid list")
    return grids


def cmd_verify(args) -> int:
    try:
        report = pdeverify.convergence_study(args.case, args.grids)
    except (KeyError, pdeverify.GridError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        print(json.dumps(report, indent=2))
        return EXIT_OK
    print(f"case {report['case']} (reflection: {report['reflection']})")
    for row in report["results"]:
        parts = ", ".join(f"{k}={v:.3e}" for k, v in row["residuals"].items())
        print(f"  n={row['n']:<4} h={row['h']:.4e}  {parts}")
    order = report["fitted_order"]
    if order is not None:
        print(f"fitted order: {order:.3f}")
    return EXIT_OK


def cmd_charge(args) -> int:
    env = dict(QUARTET_LABELS)
    for decl in args.declare or []:
        name, _, value = decl.partition("=")
        try:
            env[name.strip()] = K4Charge.parse(value)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR
    factors = [f for f in re.split(r"\s*\*\s*", args.expr.strip()) if f]
    labels = []
    for f in factors:
        if f in ("1", "P", "T", "PT"):
            labels.append(K4Charge.parse(f))
        elif f in env:
            labels.append(env[f])
        else:
            print(f"error: unknown symbol {f!r}", file=sys.stderr)
            return EXIT_ERROR
    if not factors:
        print("error: empty expression", file=sys.stderr)
        return EXIT_ERROR
    result = infer_charge(labels)
    if args.json:
        print(json.dumps({"expression": args.expr, "factors": {f: str(c) for f, c in zip(factors, labels)}, "charge": str(result)}))
    else:
        print(result)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lorentz-k4", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide reflection homogeneity of a .refl file")
    p.add_argument("path")
    p.add_argument("--prelude", action="store_true", help="predeclare ddt, grad, E, B, rho, J")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("tables", help="print the K4 and quartet tables")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("verify", help="finite-difference residual convergence study")
    p.add_argument("case", choices=pdeverify.CASES)
    p.add_argument("--grids", type=_parse_grids, default=[16, 32, 64])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("charge", help="charge of a product such as 'eps * M * p'")
    p.add_argument("expr")
    p.add_argument("--declare", action="append", metavar="NAME=CHARGE")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_charge)
    return parser


def main(argv: list[str] | None = None) -> int:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
