"""Command-line front end: ``drw <command> [options]``.

Exit status is 0 on success, 1 when a check fails and 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .core import Context, DRWElement
from .parser import ParseError, parse_element, render, to_json
from .pseudoval import (
    TABLE,
    check_axioms,
    check_product_table,
    format_value,
    gamma_counterexample,
    gamma_estimate,
    zeta_estimate,
)
from .sampling import random_element


class UsageError(Exception):
    pass


def positive_rational(text: str) -> Fraction:
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if q <= 0:
        raise argparse.ArgumentTypeError(f"eps must be positive, got {text}")
    return q


def _element_out(args, x: DRWElement):
    return to_json(x) if args.format == "json" else render(x)


def _value_out(args, est):
    if args.format == "json":
        return {"value": format_value(est.value), "lower_bound_only": est.lower_bound_only}
    return format_value(est.value) + (" (lower bound only)" if est.lower_bound_only else "")


def cmd_canon(args, ctx):
    return 0, _element_out(args, parse_element(args.expr, ctx))


def cmd_mul(args, ctx):
    x, y = parse_element(args.x, ctx), parse_element(args.y, ctx)
    return 0, _element_out(args, x * y)


def cmd_diff(args, ctx):
    return 0, _element_out(args, parse_element(args.expr, ctx).d())


def cmd_frob(args, ctx):
    return 0, _element_out(args, parse_element(args.expr, ctx).F(args.k))


def cmd_versch(args, ctx):
    return 0, _element_out(args, parse_element(args.expr, ctx).V(args.k))


def cmd_gamma(args, ctx):
    return 0, _value_out(args, gamma_estimate(parse_element(args.expr, ctx), args.eps))


def cmd_zeta(args, ctx):
    return 0, _value_out(args, zeta_estimate(parse_element(args.expr, ctx), args.eps))


def cmd_counterexample(args, ctx):
    if ctx.n < args.which:
        ctx = Context(ctx.p, args.which, ctx.M)
    r = gamma_counterexample(args.which, args.m, ctx, args.eps)
    gx, gy, gxy = (format_value(v) for v in (r.gamma_x, r.gamma_y, r.gamma_xy))
    total = format_value(r.gamma_x + r.gamma_y)
    status = 0 if r.reproduced else 1
    if args.format == "json":
        return status, {
            "which": r.which,
            "m": r.m,
            "eps": str(r.eps),
            "x": to_json(r.x),
            "y": to_json(r.y),
            "xy": to_json(r.xy),
            "gamma_x": gx,
            "gamma_y": gy,
            "gamma_xy": gxy,
            "matches_closed_forms": r.matches_closed_forms,
            "product_identity": r.product_identity,
            "violated": r.violated,
        }
    lines = [
        f"x  = {render(r.x)}",
        f"y  = {render(r.y)}",
        f"xy = {render(r.xy)}",
        f"gamma(x)  = {gx}",
        f"gamma(y)  = {gy}",
        f"gamma(xy) = {gxy}",
        f"gamma(x) + gamma(y) = {total}",
        f"closed forms: {'match' if r.matches_closed_forms else 'MISMATCH'}",
    ]
    if r.violated:
        lines.append(f"PRODUCT RULE VIOLATED: {gxy} < {total}")
    else:
        lines.append("product rule holds")
    return status, "\n".join(lines)


def cmd_table_check(args, ctx):
    rng = random.Random(args.seed)
    rows = {}
    failures = []
    for row in TABLE:
        worst = {name: None for name in TABLE[row]}
        for t in range(args.trials):
            x = random_element(ctx, rng, kind=row[0])
            y = random_element(ctx, rng, kind=row[1])
            rep = check_product_table(x, y, args.eps)
            for cell in rep.cells:
                if worst[cell.projection] is None or cell.margin < worst[cell.projection]:
                    worst[cell.projection] = cell.margin
                if not cell.ok:
                    failures.append((row, cell.projection, render(x), render(y)))
        rows[" x ".join(row)] = {k: format_value(v) for k, v in worst.items()}
    status = 1 if failures else 0
    if args.format == "json":
        return status, {"eps": str(args.eps), "trials_per_row": args.trials, "min_margins": rows, "failures": len(failures)}
    lines = [f"product table check, eps={args.eps}, {args.trials} pairs per row"]
    for row, margins in rows.items():
        cells = ", ".join(f"{k}: {v}" for k, v in margins.items())
        lines.append(f"  {row:<12} min margins  {cells}")
    for row, proj, xs, ys in failures[:5]:
        lines.append(f"  FAIL {' x '.join(row)} -> {proj}: x = {xs}; y = {ys}")
    lines.append("all margins nonnegative" if not failures else f"{len(failures)} cell violations")
    return status, "\n".join(lines)


def cmd_axioms(args, ctx):
    if args.x is not None:
        if args.y is None:
            raise UsageError("axioms takes either two expressions or none")
        pairs = [(parse_element(args.x, ctx), parse_element(args.y, ctx))]
    else:
        rng = random.Random(args.seed)
        pairs = [(random_element(ctx, rng), random_element(ctx, rng)) for _ in range(args.trials)]
    worst: dict[str, object] = {}
    failed = flagged = 0
    for x, y in pairs:
        rep = check_axioms(x, y, args.eps)
        for k, v in rep.margins.items():
            if k not in worst or v < worst[k]:
                worst[k] = v
        failed += not rep.passed
        flagged += rep.flagged_violation
    status = 1 if failed else 0
    margins = {k: format_value(v) for k, v in worst.items()}
    if args.format == "json":
        return status, {"eps": str(args.eps), "pairs": len(pairs), "min_margins": margins, "failed": failed, "flagged": flagged}
    lines = [f"zeta axioms, eps={args.eps}, {len(pairs)} pair(s)"]
    lines += [f"  {k:<9} min margin {v}" for k, v in margins.items()]
    lines.append("all axioms hold" if not failed else f"{failed} pair(s) fail ({flagged} only through truncation)")
    return status, "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=argparse.SUPPRESS, help="the prime (default 2)")
    common.add_argument("--nvars", type=int, default=argparse.SUPPRESS, help="number of variables (default 2)")
    common.add_argument("--prec", type=int, default=argparse.SUPPRESS, help="Witt vector length M (default 6)")
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized checks")
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the output to this file")

    parser = argparse.ArgumentParser(prog="drw", description="de Rham-Witt calculator", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    add("canon", cmd_canon, "print the canonical form").add_argument("expr")
    sp = add("mul", cmd_mul, "multiply two expressions")
    sp.add_argument("x")
    sp.add_argument("y")
    add("diff", cmd_diff, "apply d").add_argument("expr")
    for name, func in (("frob", cmd_frob), ("versch", cmd_versch)):
        sp = add(name, func, f"apply {'F' if name == 'frob' else 'V'}")
        sp.add_argument("expr")
        sp.add_argument("--k", type=int, default=1, help="number of applications")
    for name, func in (("gamma", cmd_gamma), ("zeta", cmd_zeta)):
        sp = add(name, func, f"evaluate {name}_eps")
        sp.add_argument("--eps", type=positive_rational, required=True)
        sp.add_argument("expr")
    sp = add("table-check", cmd_table_check, "check the product table on random pairs")
    sp.add_argument("--eps", type=positive_rational, default=Fraction(1, 2))
    sp.add_argument("--trials", type=int, default=300, help="random pairs per table row")
    sp = add("counterexample", cmd_counterexample, "show that gamma_eps is not submultiplicative")
    sp.add_argument("--which", type=int, choices=(1, 2), default=1)
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--eps", type=positive_rational, default=Fraction(1, 2))
    sp = add("axioms", cmd_axioms, "check the pseudovaluation axioms for zeta_eps")
    sp.add_argument("x", nargs="?")
    sp.add_argument("y", nargs="?")
    sp.add_argument("--eps", type=positive_rational, default=Fraction(1, 2))
    sp.add_argument("--trials", type=int, default=200, help="random pairs when no expressions are given")
    return parser


DEFAULTS = {"p": 2, "nvars": 2, "prec": 6, "format": "text", "seed": 0, "out": None}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for k, v in DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    try:
        ctx = Context(args.p, args.nvars, args.prec)
        status, out = args.func(args, ctx)
    except ParseError as exc:
        print(f"drw: parse error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, UsageError) as exc:
        print(f"drw: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(out) if args.format == "json" else out
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
