"""Command-line front end.

    bigeo interp --input nodes.csv --grid 3:24:0.25 --output run/ex2
    bigeo deriv --point 3 --f 1.0986 --fprime 0.33333
    bigeo seq --gen 'exp(k^(m-1))' --m 3 --order 2 --p 1 --mode member
    bigeo matrix --input A.csv --x x.csv --m 2 --i 3
"""
from __future__ import annotations

import argparse
import ast
import io
import math
import operator
import sys
from pathlib import Path

from . import io as bio
from .core import GeoReal
from .deriv import BUILTINS, dg_from_classical, dg_numeric, known_derivative
from .diff import GeoSequence
from .errors import BigeoError, ParseError
from .hermite import classical_hermite_oracle, divided_diff_table, eval_newton, format_table, newton_coeffs
from .matrix import GeoMatrix, build_B, row_sums, transform_consistency
from .spaces import (
    DEFAULT_TRUNCATION,
    dual_partial_sum,
    lemma_diag_sequences,
    membership_diagnostic,
    norm_p,
    upsilon_project,
)

EXIT_CODES = {
    "error": 1,
    "parse": 3,
    "domain": 4,
    "division-by-geometric-zero": 5,
    "evaluation": 6,
    "index": 7,
    "invalid-p": 8,
    "dimension": 9,
    "degenerate-nodes": 10,
}


class Formatter:
    def __init__(self, paper_view: bool = False, digits: int = 10):
        self.paper_view = paper_view
        self.digits = digits

    def num(self, v: float) -> str:
        if self.paper_view:
            return f"{v:.4f}"
        return f"{v:.{self.digits}g}"

    def geo(self, g: GeoReal) -> str:
        return f"{self.num(g.to_real())} (= e^{self.num(g.log_value)})"


# generator mini-language: expressions in k and m giving the term x_k

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_FUNCS = {"exp": math.exp, "ln": math.log, "log": math.log, "sqrt": math.sqrt}
_CONSTS = {"e": math.e, "pi": math.pi}


def compile_generator(expr: str, m: int):
    """Return ``k -> ln x_k`` for an expression of the term ``x_k``.

    ``exp``, products, quotients and powers are resolved in log form, so
    ``exp(k^3)`` stays finite for large ``k``.
    """
    try:
        tree = ast.parse(expr.replace("^", "**"), mode="eval").body
    except SyntaxError as exc:
        raise ParseError(f"cannot parse generator {expr!r}: {exc.msg}") from None

    def value(node, k):
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name):
            if node.id == "k":
                return float(k)
            if node.id == "m":
                return float(m)
            if node.id in _CONSTS:
                return _CONSTS[node.id]
            raise ParseError(f"unknown name {node.id!r} in generator")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = value(node.operand, k)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](value(node.left, k), value(node.right, k))
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) \
                and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords:
            return _FUNCS[node.func.id](value(node.args[0], k))
        raise ParseError(f"unsupported construct in generator: {ast.dump(node)}")

    def logv(node, k):
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) \
                and node.func.id == "exp" and len(node.args) == 1:
            return value(node.args[0], k)
        if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Mult):
            return logv(node.left, k) + logv(node.right, k)
        if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Div):
            return logv(node.left, k) - logv(node.right, k)
        if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow):
            return value(node.right, k) * logv(node.left, k)
        v = value(node, k)
        if not v > 0:
            raise ParseError(f"generator term at k={k} is {v}, not positive")
        return math.log(v)

    def gen(k: int) -> float:
        try:
            out = logv(tree, k)
        except (OverflowError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"generator failed at k={k}: {exc}") from None
        if not math.isfinite(out):
            raise ParseError(f"generator log is not finite at k={k}")
        return out

    gen(1)  # surface syntax errors before any work
    return gen


def _parse_p(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity", "∞"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"--p must be a real or 'inf', got {text!r}") from None


def _emit(text: str, path, suffix: str, out):
    if path is None:
        out.write(text)
        if not text.endswith("\n"):
            out.write("\n")
        return
    target = Path(f"{path}{suffix}")
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
    out.write(f"wrote {target}\n")


def cmd_interp(args, out) -> int:
    fmt = Formatter(args.paper_view)
    records = bio.read_nodes(args.input)
    function = BUILTINS[args.function] if args.function else None
    data = bio.records_to_data(records, function)
    table = divided_diff_table(data)
    poly = newton_coeffs(table)

    buf = io.StringIO()
    bio.write_table_csv(table, buf)
    _emit(buf.getvalue(), args.output, ".table.csv", out)
    _emit(format_table(table, 4 if args.paper_view else 6), args.output, ".table.txt", out)

    buf = io.StringIO()
    bio.write_coeffs_csv(poly, buf)
    _emit(buf.getvalue(), args.output, ".coeffs.csv", out)
    out.write("coefficients: " + ", ".join(fmt.num(a.to_real()) for a in poly.coeffs) + "\n")
    out.write(f"geometric degree: {poly.geometric_degree()}\n")

    points = []
    if args.grid:
        points += bio.parse_grid(args.grid)
    if args.at:
        points += bio.parse_points(args.at)
    if points:
        reference = BUILTINS.get(args.reference or args.function or "")
        header = ["x", "p_G(x)", "log_p_G(x)"]
        if args.check:
            header.append("oracle_log_gap")
        if reference is not None:
            header.append(f"{reference.name}(x)")
        rows = []
        for x in points:
            v = eval_newton(poly, x)
            row = [repr(x), repr(v.to_real()), repr(v.log_value)]
            if args.check:
                row.append(repr(abs(classical_hermite_oracle(data, x).log_value - v.log_value)))
            if reference is not None:
                row.append(repr(reference(x)))
            rows.append(row)
        _emit(bio.write_rows(header, rows), args.output, ".values.csv", out)
    return 0


def cmd_deriv(args, out) -> int:
    fmt = Formatter(args.paper_view)
    if args.point is None:
        raise ParseError("--point is required")
    if args.function:
        f = BUILTINS[args.function]
        if args.numeric:
            d = dg_numeric(f, args.point, args.h)
        else:
            d = known_derivative(args.function, args.point)
        label = f"D_G {args.function}({fmt.num(args.point)})"
    else:
        if args.f is None or args.fprime is None:
            raise ParseError("give --function, or both --f and --fprime")
        d = dg_from_classical(args.point, args.f, args.fprime)
        label = f"D_G f({fmt.num(args.point)})"
    out.write(f"{label} = {fmt.num(d.to_real())}\n")
    out.write(f"log = {fmt.num(d.log_value)}\n")
    return 0


def cmd_seq(args, out) -> int:
    fmt = Formatter(args.paper_view)
    m = args.m
    order = args.order if args.order is not None else m
    N = args.N
    p = _parse_p(args.p)
    gen = compile_generator(args.gen, m)
    x = GeoSequence.from_generator(gen, N + order)
    if args.project:
        x = upsilon_project(x, order)

    if args.mode == "norm":
        rep = norm_p(x, order, p, N)
        out.write(f"truncation N={N}, order={order}, p={args.p}\n")
        out.write(f"head  {fmt.geo(rep.head_term)}\n")
        out.write(f"tail  {fmt.geo(rep.tail_term)}\n")
        out.write(f"total {fmt.geo(rep.total)}\n")
        csv_text = bio.write_rows(["quantity", "value", "log_value"], [
            [name, repr(g.to_real()), repr(g.log_value)]
            for name, g in (("head", rep.head_term), ("tail", rep.tail_term), ("total", rep.total))])
    elif args.mode in ("member", "dual"):
        if args.mode == "member":
            diag = membership_diagnostic(x, order, p, N)
        else:
            diag = dual_partial_sum(x, order, N)
        out.write(f"classification: {diag.classification}\n")
        out.write(f"fitted slope:   {fmt.num(diag.fitted_slope)}\n")
        out.write(f"final log sum:  {fmt.num(diag.partial_log_sums[-1][1])}\n")
        csv_text = bio.write_rows(["n", "partial_log_sum"],
                                  [[n, repr(v)] for n, v in diag.partial_log_sums])
    else:  # lemma-diag
        rows = lemma_diag_sequences(x, order, N)
        first = max(r[1].log_value for r in rows)
        second = max(r[2].log_value for r in rows)
        out.write(f"max log e^(1/k)⊙|Δ^(m-1)x_k|: {fmt.num(first)}\n")
        out.write(f"max log e^(k^-m)⊙|x_k|:      {fmt.num(second)}\n")
        csv_text = bio.write_rows(["k", "first_log", "second_log"],
                                  [[k, repr(a.log_value), repr(b.log_value)] for k, a, b in rows])
    if args.output:
        _emit(csv_text, args.output, "", out)
    elif args.csv:
        out.write(csv_text)
    return 0


def cmd_matrix(args, out) -> int:
    fmt = Formatter(args.paper_view)
    A = GeoMatrix.from_reals(bio.read_matrix(args.input))
    x = GeoSequence.from_reals(bio.read_sequence(args.x))
    B = build_B(A, args.m)
    out.write(f"B ({B.rows}x{B.columns}):\n")
    for row in B.to_reals():
        out.write("  " + "  ".join(fmt.num(v) for v in row) + "\n")
    out.write("row sums |a_nk|_G: " + ", ".join(fmt.num(s.to_real()) for s in row_sums(A)) + "\n")
    direct, via_b = transform_consistency(A, args.m, x, args.i)
    gap = abs(direct.log_value - via_b.log_value)
    out.write(f"telescoped side: {fmt.geo(direct)}\n")
    out.write(f"B-row side:      {fmt.geo(via_b)}\n")
    out.write(f"log gap: {gap:.3e}\n")
    if args.tolerance is not None and gap > args.tolerance:
        out.write(f"FAIL: gap exceeds tolerance {args.tolerance}\n")
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bigeo", description="Bigeometric calculus toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--paper-view", action="store_true",
                       help="4-decimal display like the published tables")
        p.add_argument("--tolerance", type=float, default=None)

    p = sub.add_parser("interp", help="bigeometric Hermite interpolation")
    p.add_argument("--input", required=True, help="node file (CSV or JSON)")
    p.add_argument("--output", help="path prefix for output files (default: stdout)")
    p.add_argument("--grid", help="evaluation grid A:B:STEP")
    p.add_argument("--at", help="comma-separated evaluation points")
    p.add_argument("--function", choices=sorted(BUILTINS),
                   help="builtin used for nodes lacking derivative data")
    p.add_argument("--reference", choices=sorted(BUILTINS),
                   help="add a reference f(x) column to the values CSV")
    p.add_argument("--check", action="store_true",
                   help="add the gap to the classical oracle per point")
    common(p)
    p.set_defaults(func=cmd_interp)

    p = sub.add_parser("deriv", help="bigeometric derivative at a point")
    p.add_argument("--point", type=float)
    p.add_argument("--f", type=float, help="f(point)")
    p.add_argument("--fprime", type=float, help="classical f'(point)")
    p.add_argument("--function", choices=sorted(BUILTINS))
    p.add_argument("--numeric", action="store_true", help="central difference instead of closed form")
    p.add_argument("--h", type=float, default=6e-6)
    common(p)
    p.set_defaults(func=cmd_deriv)

    p = sub.add_parser("seq", help="Cesàro difference space diagnostics")
    p.add_argument("--gen", required=True, help="term x_k as an expression in k and m")
    p.add_argument("--m", type=int, required=True, help="value bound to m in the generator")
    p.add_argument("--order", type=int, help="difference order (default: m)")
    p.add_argument("--p", default="1", help="real >= 1 or 'inf'")
    p.add_argument("--N", type=int, default=DEFAULT_TRUNCATION)
    p.add_argument("--mode", choices=["norm", "member", "dual", "lemma-diag"], default="norm")
    p.add_argument("--project", action="store_true", help="apply the υ-projection first")
    p.add_argument("--csv", action="store_true", help="also print the CSV to stdout")
    p.add_argument("--output", help="write the CSV to this path")
    common(p)
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("matrix", help="B-matrix construction and consistency check")
    p.add_argument("--input", required=True, help="matrix CSV of positive reals")
    p.add_argument("--x", required=True, help="sequence file of positive reals")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--i", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_matrix)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except BigeoError as exc:
        err.write(f"error[{exc.category}]: {exc}\n")
        return EXIT_CODES.get(exc.category, 1)
    except OSError as exc:
        err.write(f"error[parse]: {exc}\n")
        return EXIT_CODES["parse"]


if __name__ == "__main__":
    sys.exit(main())
