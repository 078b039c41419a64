"""The growth functions gamma_eps and zeta_eps, and checks of their properties.

Values are exact: a ``Fraction`` or ``math.inf`` / ``-math.inf``.  ``eps`` is
always an exact positive rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .core import PROJECTIONS, Context, DRWElement, summand
from .product import mul, mul_with_truncation
from .weights import Partition
from .witt_scalar import valuation

Extended = Union[Fraction, float]
INF = math.inf


def _eps(eps) -> Fraction:
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    return eps


def gamma_term(key: Partition, val: int, eps: Fraction) -> Fraction:
    a = key.base
    return Fraction(val + a.u) - eps * a.total


def factor_count(key: Partition) -> int:
    """Number of factors of the basic element: ``#I``, plus one when ``I_0`` is nonempty."""
    return key.size + (0 if key.leading_empty else 1)


def zeta_term(key: Partition, val: int, eps: Fraction, n: int) -> Fraction:
    a = key.base
    return Fraction(2 * n * val + factor_count(key) * a.u) - eps * a.total


@dataclass(frozen=True)
class Estimate:
    """A value that may only be a lower bound, when a term lost to truncation attains it."""

    value: Extended
    lower_bound_only: bool = False


def _estimate(x: DRWElement, term, truncated: Mapping[Partition, object] | None) -> Estimate:
    ctx = x.ctx
    best = min((term(k, valuation(c, ctx.p, ctx.M)) for k, c in x.terms.items()), default=INF)
    if not truncated:
        return Estimate(best)
    # coefficients that vanish mod p^M have valuation at least M
    lost = min((term(k, ctx.M) for k in truncated), default=INF)
    if lost <= best:
        return Estimate(lost, True)
    return Estimate(best)


def gamma_estimate(x: DRWElement, eps, truncated=None) -> Estimate:
    eps = _eps(eps)
    return _estimate(x, lambda k, v: gamma_term(k, v, eps), truncated)


def zeta_estimate(x: DRWElement, eps, truncated=None) -> Estimate:
    eps = _eps(eps)
    n = x.ctx.n
    return _estimate(x, lambda k, v: zeta_term(k, v, eps, n), truncated)


def gamma(x: DRWElement, eps) -> Extended:
    return gamma_estimate(x, eps).value


def zeta(x: DRWElement, eps) -> Extended:
    return zeta_estimate(x, eps).value


def margin(value: Extended, bound: Extended) -> Extended:
    """``value - bound``, with ``inf - inf`` read as a satisfied bound."""
    if value == INF:
        return INF
    if bound == INF:
        return -INF
    return value - bound


def format_value(v: Extended) -> str:
    if v == INF:
        return "inf"
    if v == -INF:
        return "-inf"
    return str(Fraction(v))


# ---- pseudovaluation axioms


@dataclass
class AxiomReport:
    eps: Fraction
    values: dict[str, Extended]
    margins: dict[str, Extended]
    flagged: bool = False

    @property
    def passed(self) -> bool:
        return all(m >= 0 for m in self.margins.values())

    @property
    def flagged_violation(self) -> bool:
        return self.flagged and self.margins["product"] < 0


def check_axioms(x: DRWElement, y: DRWElement, eps) -> AxiomReport:
    eps = _eps(eps)
    ctx = x.ctx
    z = lambda e: zeta(e, eps)  # noqa: E731
    zx, zy = z(x), z(y)
    xy, lost = mul_with_truncation(x, y)
    prod = zeta_estimate(xy, eps, lost)
    values = {
        "zero": z(ctx.zero()),
        "one": z(ctx.one()),
        "x": zx,
        "y": zy,
        "-x": z(-x),
        "x+y": z(x + y),
        "xy": prod.value,
    }
    margins = {
        "zero": 0 if values["zero"] == INF else -INF,
        "one": -abs(values["one"]),
        "negation": 0 if values["-x"] == zx else -INF,
        "sum": margin(values["x+y"], min(zx, zy)),
        "product": margin(prod.value, zx + zy),
    }
    return AxiomReport(eps, values, margins, prod.lower_bound_only)


# ---- product table

# constant c in zeta((xy)|_proj) >= zeta(x) + zeta(y) + c; None marks a projection that vanishes
TABLE: dict[tuple[str, str], dict[str, int | None]] = {
    ("int", "int"): {"int": 0, "frp": None, "dfrp": None},
    ("frp", "int"): {"int": None, "frp": 0, "dfrp": 1},
    ("dfrp", "int"): {"int": None, "frp": 0, "dfrp": 0},
    ("frp", "frp"): {"int": 2, "frp": 1, "dfrp": 3},
    ("dfrp", "frp"): {"int": 0, "frp": 0, "dfrp": 1},
    ("dfrp", "dfrp"): {"int": 0, "frp": None, "dfrp": 0},
}


def classify(x: DRWElement) -> str:
    kinds = {summand(k) for k in x.terms}
    if len(kinds) != 1:
        raise ValueError(f"element does not lie in a single summand: {sorted(kinds) or 'zero'}")
    return kinds.pop()


def table_row(cx: str, cy: str) -> tuple[str, str]:
    for row in TABLE:
        if sorted(row) == sorted((cx, cy)):
            return row
    raise ValueError(f"no table row for {cx} x {cy}")


@dataclass
class Cell:
    projection: str
    constant: int | None
    value: Extended
    bound: Extended
    margin: Extended
    flagged: bool = False

    @property
    def ok(self) -> bool:
        return self.margin >= 0


@dataclass
class TableReport:
    row: tuple[str, str]
    cells: list[Cell] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.cells)


def check_product_table(x: DRWElement, y: DRWElement, eps) -> TableReport:
    eps = _eps(eps)
    row = table_row(classify(x), classify(y))
    base = zeta(x, eps) + zeta(y, eps)
    xy, lost = mul_with_truncation(x, y)
    report = TableReport(row)
    for name, proj in PROJECTIONS.items():
        c = TABLE[row][name]
        part = proj(xy)
        part_lost = {k: v for k, v in lost.items() if summand(k) == name}
        if c is None:
            # vanishing projection: the exact product must have no term here at all
            vanishes = not part and not part_lost
            report.cells.append(Cell(name, None, INF if vanishes else -INF, INF, INF if vanishes else -INF))
            continue
        est = zeta_estimate(part, eps, part_lost)
        bound = base + c
        report.cells.append(Cell(name, c, est.value, bound, margin(est.value, bound), est.lower_bound_only))
    return report


# ---- gamma counterexamples and the comparison with zeta


@dataclass
class CounterexampleReport:
    which: int
    m: int
    eps: Fraction
    x: DRWElement
    y: DRWElement
    xy: DRWElement
    gamma_x: Extended
    gamma_y: Extended
    gamma_xy: Extended
    expected: tuple[Fraction, Fraction, Fraction]
    product_identity: bool

    @property
    def matches_closed_forms(self) -> bool:
        return (self.gamma_x, self.gamma_y, self.gamma_xy) == self.expected

    @property
    def violated(self) -> bool:
        return self.gamma_xy < self.gamma_x + self.gamma_y

    @property
    def reproduced(self) -> bool:
        return self.matches_closed_forms and self.violated and self.product_identity


def gamma_counterexample(which: int, m: int, ctx: Context, eps) -> CounterexampleReport:
    """Build ``V^m([X^(p^m-1)])`` and ``d(V^m([X]))`` (or ``[Y]`` for the second one) and
    evaluate gamma on both factors and on their product."""
    eps = _eps(eps)
    p = ctx.p
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    if not 1 <= m <= ctx.M - 1:
        raise ValueError(f"m must lie in [1, {ctx.M - 1}] at precision M={ctx.M}")
    if ctx.n < which:
        raise ValueError(f"counterexample {which} needs at least {which} variables")
    pm = p**m
    exps = [0] * ctx.n
    exps[0] = pm - 1
    x = ctx.teich(exps).V(m)
    other = [0] * ctx.n
    other[which - 1] = 1
    y = ctx.teich(other).V(m).d()
    xy = mul(x, y)
    if which == 1:
        identity = xy == pm * ctx.teich(other).d()
    else:
        a = ctx.weight([Fraction(pm - 1, pm), Fraction(1, pm)] + [0] * (ctx.n - 2))
        identity = xy == ctx.basic(1, a, [1])
    expected = (m - eps * Fraction(pm - 1, pm), m - eps / pm, m - eps)
    return CounterexampleReport(
        which, m, eps, x, y, xy, gamma(x, eps), gamma(y, eps), gamma(xy, eps), expected, identity
    )


@dataclass
class SandwichReport:
    upper: Extended
    middle: Extended
    lower: Extended

    @property
    def holds(self) -> bool:
        return self.upper >= self.middle >= self.lower


def compare_gamma_zeta(x: DRWElement, eps) -> SandwichReport:
    """``2n gamma_{eps/2n}(x) >= zeta_eps(x) >= gamma_eps(x)``."""
    eps = _eps(eps)
    n = x.ctx.n
    if n == 0:
        raise ValueError("the comparison needs at least one variable")
    return SandwichReport(2 * n * gamma(x, eps / (2 * n)), zeta(x, eps), gamma(x, eps))
