"""Command-line front end: field construction, spectrum computation, and
theorem verification sweeps.

Elements are entered as signed integers interpreted mod p in the prime
subfield (so --gamma -1 always means the field's -1), or as raw indices
with --raw-index.  --c-expr accepts prime-subfield rationals like -1/2,
since the classification constants are rationals.  Exit codes: 0 pass,
1 mismatch found, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from .fields import DEFAULT_ORDER_CAP, FieldCtx, make_field
from .spectra import c_uniformity, cdiff_count, classify_pcn
from .sweeps import (THEOREMS, ReportWriter, pa_case_suite, property_suite,
                     sweep)
from .tables import FuncTable, inverse_table, read_table, swap01, swap1g

TIERS = {"ci": 125, "full": 500}
MISMATCH_PRINT_CAP = 20


def parse_element(ctx: FieldCtx, value: int, raw_index: bool) -> int:
    if raw_index:
        if not 0 <= value < ctx.q:
            raise ValueError(f"raw index {value} outside [0, {ctx.q})")
        return value
    return ctx.element(value)


def parse_subfield_expr(ctx: FieldCtx, text: str) -> int:
    """A signed prime-subfield rational: '3', '-2', '-1/2', '4/3'."""
    s = text.strip()
    sign = 1
    if s[:1] in "+-":
        sign = -1 if s[0] == "-" else 1
        s = s[1:]
    num_s, _, den_s = s.partition("/")
    try:
        num = int(num_s)
        den = int(den_s) if den_s else 1
    except ValueError:
        raise ValueError(f"cannot parse element expression {text!r}") from None
    if den % ctx.p == 0:
        raise ValueError(f"denominator of {text!r} vanishes in characteristic {ctx.p}")
    val = ctx.mul(ctx.element(num), ctx.inv0(ctx.element(den)))
    return ctx.neg(val) if sign < 0 else val


def _field_from_args(args) -> FieldCtx:
    if args.p is None:
        raise ValueError("--p is required")
    return make_field(args.p, args.n, order_cap=args.max_order)


def _resolve_c(ctx, args) -> int:
    if args.c_expr is not None:
        if args.c is not None:
            raise ValueError("give either --c or --c-expr, not both")
        return parse_subfield_expr(ctx, args.c_expr)
    if args.c is None:
        raise ValueError("--c (or --c-expr) is required")
    return parse_element(ctx, args.c, args.raw_index)


def _build_table(ctx, args) -> FuncTable:
    family = args.family
    if family == "inv":
        return inverse_table(ctx)
    if family == "swap01":
        return swap01(ctx)
    if family == "swap1g":
        if args.gamma is None:
            raise ValueError("--gamma is required for family swap1g")
        return swap1g(ctx, parse_element(ctx, args.gamma, args.raw_index))
    raise ValueError(f"unknown family {family!r}")


def cmd_field(args) -> int:
    ctx = _field_from_args(args)
    print(f"p = {ctx.p}  n = {ctx.n}  q = {ctx.q}")
    print(f"modulus: {ctx.poly_str()}  (coefficients, constant first: "
          f"{' '.join(str(c) for c in ctx.modulus)})")
    print(f"chi_exp = {ctx.chi_exp}")
    print(f"chi(-1) = {ctx.chi(ctx.element(-1))}  chi(2) = {ctx.chi(ctx.element(2))}")
    sample = list(range(min(ctx.q, 10)))
    print("chi by index:", " ".join(f"{x}:{ctx.chi(x):+d}" if x else "0:0" for x in sample))
    return 0


def cmd_spectrum(args) -> int:
    if args.family.startswith("table:"):
        table = read_table(args.family[len("table:"):])
        ctx = table.ctx
        desc = args.family
    else:
        ctx = _field_from_args(args)
        table = _build_table(ctx, args)
        desc = args.family
        if args.family == "swap1g":
            desc += f" gamma={parse_element(ctx, args.gamma, args.raw_index)}"
    c = _resolve_c(ctx, args)
    report = c_uniformity(table, c)
    print(f"field q={ctx.q} (p={ctx.p}, n={ctx.n})  family {desc}  c={c}")
    print(f"max count: {report.max_count}")
    print(f"classification: {classify_pcn(report)}")
    wit = " ".join(f"({a},{b})" for a, b in report.witnesses)
    print(f"witnesses (a,b): {wit}")
    hist = " ".join(f"{k}:{v}" for k, v in sorted(report.histogram.items()))
    print(f"histogram count:frequency: {hist}")
    if args.a is not None:
        a = parse_element(ctx, args.a, args.raw_index)
        if args.b is not None:
            b = parse_element(ctx, args.b, args.raw_index)
            print(f"count at (a={a}, b={b}): {cdiff_count(table, c, a, b)}")
        else:
            from .spectra import c_row_histogram
            row = c_row_histogram(table, c, a)
            print(f"row a={a} max: {int(row.max())}")
    return 0


def cmd_verify(args) -> int:
    if args.theorem == "properties":
        report = property_suite(seed=args.seed, trials=1000)
        for line in report.lines():
            print(line)
        print("properties:", "pass" if report.passed else "FAIL")
        return 0 if report.passed else 1
    if args.theorem == "pa_cases":
        report = pa_case_suite()
        for line in report.lines():
            print(line)
        print("pa_cases:", "pass" if report.passed else "FAIL")
        return 0 if report.passed else 1

    floor = THEOREMS[args.theorem].floor_q
    q_min = args.qmin if args.qmin is not None else max(5, floor - 2)
    q_max = args.qmax if args.qmax is not None else TIERS[args.tier]
    writer = ReportWriter(args.format, args.out) if args.out else None
    try:
        summary, mismatched = sweep(
            args.theorem, q_min, q_max, threads=args.threads,
            fail_fast=args.fail_fast, force=args.force, collect=False,
            on_verdict=writer.write if writer else None)
    finally:
        if writer:
            writer.close()
    print(f"theorem {summary.theorem_id}: range ({summary.q_min}, {summary.q_max}] "
          f"fields={summary.fields_checked} instances={summary.instances_checked} "
          f"mismatches={summary.mismatches} elapsed={summary.elapsed:.1f}s "
          f"config={summary.config_hash}")
    for v in mismatched[:MISMATCH_PRINT_CAP]:
        where = f"q={v.q}" + (f" gamma={v.gamma}" if v.gamma is not None else "")
        print(f"MISMATCH {where} c={v.c}: predicted {v.predicted} observed "
              f"{v.observed} witness={v.witness} clauses={list(v.predicted.clauses)}")
    if len(mismatched) > MISMATCH_PRINT_CAP:
        print(f"... and {len(mismatched) - MISMATCH_PRINT_CAP} more")
    if args.out:
        print(f"report written to {args.out}")
    return 1 if summary.mismatches else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swapinv",
        description="c-differential spectra of inverse and swapped-inverse "
                    "permutations over odd-characteristic fields, with "
                    "exhaustive verification of their classification formulas.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--p", type=int, help="odd prime characteristic")
        sp.add_argument("--n", type=int, default=1, help="extension degree (default 1)")
        sp.add_argument("--max-order", type=int, default=DEFAULT_ORDER_CAP,
                        help="field order cap")
        sp.add_argument("--raw-index", action="store_true",
                        help="treat element flags as raw indices in [0, q)")

    sp = sub.add_parser("field", help="construct a field and print its summary")
    add_common(sp)
    sp.set_defaults(func=cmd_field)

    sp = sub.add_parser("spectrum", help="compute the c-differential spectrum of a table")
    add_common(sp)
    sp.add_argument("--family", required=True,
                    help="inv, swap01, swap1g, or table:<path>")
    sp.add_argument("--gamma", type=int, help="swap point for family swap1g")
    sp.add_argument("--c", type=int, help="the twist c as a signed integer")
    sp.add_argument("--c-expr", help="c as a prime-subfield rational, e.g. -1/2")
    sp.add_argument("--a", type=int, help="optional: inspect one row")
    sp.add_argument("--b", type=int, help="optional with --a: inspect one cell")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("verify", help="sweep a theorem against brute force")
    sp.add_argument("--theorem", required=True,
                    choices=sorted(THEOREMS) + ["properties", "pa_cases"])
    sp.add_argument("--tier", choices=sorted(TIERS), default="ci",
                    help="preset range: ci (q <= 125) or full (q <= 500)")
    sp.add_argument("--qmin", type=int, help="override lower bound (exclusive)")
    sp.add_argument("--qmax", type=int, help="override upper bound (inclusive)")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--out", help="write the verdict report to this path")
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0, help="seed for --theorem properties")
    sp.add_argument("--fail-fast", action="store_true")
    sp.add_argument("--force", action="store_true", help="allow ranges beyond the cap")
    sp.set_defaults(func=cmd_verify)
    return parser


def _normalize_argv(argv):
    # let `--c-expr -1/2` through: argparse would read the value as a flag
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--c-expr":
            val = next(it, None)
            if val is None:
                out.append(tok)
            else:
                out.append(f"--c-expr={val}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = _build_parser().parse_args(_normalize_argv(argv))
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
