"""Command-line entry point: ``jetlab table|invariants|classify|verify``.

Exit codes: 0 success, 1 property failure, 2 usage or parse error,
3 domain error (matrix not positive definite).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from .exactlin import format_rational, parse_rational

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _default_seed() -> int:
    raw = os.environ.get("JETLAB_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"JETLAB_SEED must be an integer, got {raw!r}") from None


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, output text)
# ---------------------------------------------------------------------------

def cmd_table(args) -> tuple[int, str]:
    from .jetalgebra import emit_table, j2_h2, jl_subalgebra

    if args.target == "j2":
        g, prefix = j2_h2(), "E"
    else:
        if args.c is None:
            raise UsageError("missing --c")
        if args.c <= 0:
            raise UsageError("c must be positive")
        g, prefix = jl_subalgebra(args.c)[0], "F"
    doc = emit_table(g, args.format, prefix, args.omit_trivial)
    return EXIT_OK, doc if args.format == "text" else _dump(doc)


def cmd_invariants(args) -> tuple[int, str]:
    from .jetalgebra import jl_subalgebra
    from .liealg import invariant_report

    cs = args.c or []
    if not cs:
        raise UsageError("missing --c")
    if any(c <= 0 for c in cs):
        raise UsageError("c must be positive")
    reports = [invariant_report(jl_subalgebra(c)[0], seed=args.seed, trials=args.trials) for c in cs]
    verdicts = []
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            diff = reports[i].differing_fields(reports[j])
            verdict = "DISTINGUISHED-BY " + ",".join(diff) if diff else "SAME-INVARIANTS"
            verdicts.append({"a": format_rational(cs[i]), "b": format_rational(cs[j]), "verdict": verdict})
    if args.format == "json":
        doc = {"reports": [dict(r.to_json(), c=format_rational(c)) for c, r in zip(cs, reports)],
               "verdicts": verdicts}
        return EXIT_OK, _dump(doc)
    lines = []
    for c, r in zip(cs, reports):
        lines.append(f"c = {format_rational(c)}")
        for k, v in r.to_json().items():
            if k != "extra":
                lines.append(f"  {k}: {v}")
    for v in verdicts:
        lines.append(f"{v['a']} vs {v['b']}: {v['verdict']}")
    return EXIT_OK, "\n".join(lines) + "\n"


def read_matrix(path: str) -> list[list[float]]:
    """JSON (a list of rows, or {"matrix": rows}) or CSV; entries may be "p/q"."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None

    def num(v) -> float:
        if isinstance(v, bool):
            raise ValueError(v)
        if isinstance(v, (int, float)):
            return float(v)
        return float(parse_rational(str(v)))

    try:
        stripped = text.lstrip()
        if stripped.startswith(("[", "{")):
            doc = json.loads(text)
            rows = doc["matrix"] if isinstance(doc, dict) else doc
        else:
            rows = [r for r in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in r)]
        mat = [[num(v) for v in row] for row in rows]
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse matrix in {path}: {exc}") from None
    if len(mat) != 4 or any(len(r) != 4 for r in mat):
        raise UsageError("classification needs a 4x4 matrix")
    return mat


def cmd_classify(args) -> tuple[int, str]:
    import numpy as np

    from .willi import NotPositiveDefinite, classify, williamson

    mat = np.array(read_matrix(args.matrix))
    if not np.array_equal(mat, mat.T):
        raise UsageError("matrix is not symmetric")
    try:
        dec = williamson(mat)
        c = classify(mat)
    except NotPositiveDefinite as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN, ""
    lam = dec.lam.tolist()
    doc = {"lambda": lam, "c": c, "rawRatio": lam[1] / lam[0],
           "residuals": {"symplectic": dec.residualSymplectic, "diagonal": dec.residualDiagonal}}
    if args.format == "json":
        return EXIT_OK, _dump(doc)
    text = (f"lambda: {lam[0]:.12g} {lam[1]:.12g}\n"
            f"c: {c:.12g}\n"
            f"residuals: symplectic {dec.residualSymplectic:.3e} diagonal {dec.residualDiagonal:.3e}\n")
    return EXIT_OK, text


def cmd_verify(args) -> tuple[int, str]:
    from . import checks

    results = checks.run(args.suite, seed=args.seed)
    failures = [f for fs in results.values() for f in fs]
    code = EXIT_FAIL if failures else EXIT_OK
    if args.format == "json":
        doc = {"suites": {k: {"pass": not v, "failures": v} for k, v in results.items()}, "pass": not failures}
        return code, _dump(doc)
    lines = [f"{name}: {'PASS' if not fs else f'FAIL ({len(fs)})'}" for name, fs in results.items()]
    lines += [json.dumps(f, sort_keys=True) for f in failures]
    return code, "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=None,
                        help="random seed (default: $JETLAB_SEED or 0)")
    common.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="jetlab", description="Jet algebras of the Heisenberg group H^2.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="bracket table of j2 or Lie(JL_c)")
    p.add_argument("--target", choices=("j2", "jlc"), default="j2")
    p.add_argument("--c", type=_rational, default=None)
    p.add_argument("--paper-layout", "--omit-trivial", dest="omit_trivial", action="store_true",
                   help="omit the central basis vector (last row and column)")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("invariants", parents=[common], help="isomorphism invariants of Lie(JL_c)")
    p.add_argument("--c", type=_rational, action="append")
    p.add_argument("--trials", type=int, default=8)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("classify", parents=[common], help="class c of a 4x4 coefficient matrix")
    p.add_argument("matrix", help="JSON or CSV file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", parents=[common], help="run property suites")
    p.add_argument("--suite", choices=("all", "jacobi", "tables", "harmonic", "prolong", "swap"),
                   default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.seed is None:
            args.seed = _default_seed()
        code, text = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if text:
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
