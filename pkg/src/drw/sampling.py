"""Seeded random weight functions and elements for the randomized checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .core import Context, DRWElement, summand
from .weights import Partition, WeightFunction

SUMMANDS = ("int", "frp", "dfrp")


def random_weight(
    ctx: Context,
    rng: random.Random,
    *,
    max_u: int = 3,
    max_total: int = 8,
    fractional: bool | None = None,
    nonzero: bool = True,
) -> WeightFunction:
    """A weight with ``|a| <= max_total`` and ``u(a) <= max_u``.

    ``fractional`` forces ``u(a) > 0`` (True) or ``u(a) = 0`` (False).
    """
    p, n = ctx.p, ctx.n
    if n == 0:
        if fractional or nonzero:
            raise ValueError("no nonzero weights without variables")
        return WeightFunction.zero(p, 0)
    while True:
        k = rng.randint(1 if nonzero else 0, n)
        supp = rng.sample(range(n), k)
        vals = [Fraction(0)] * n
        budget = Fraction(max_total)
        for j, i in enumerate(supp):
            e = 0 if fractional is False else rng.randint(0, max_u)
            # share what is left of the budget evenly among the remaining entries
            cap = int(budget / (len(supp) - j) * p**e)
            if cap < 1:
                break
            vals[i] = Fraction(rng.randint(1, cap), p**e)
            budget -= vals[i]
        else:
            a = ctx.weight(vals)
            if fractional is None or fractional == (a.u > 0):
                return a


def random_key(ctx: Context, rng: random.Random, kind: str | None = None) -> Partition:
    """A basic-element key, optionally from one summand: ``int``, ``frp`` or ``dfrp``."""
    if kind not in (None, *SUMMANDS):
        raise ValueError(f"unknown summand {kind!r}")
    if kind == "int" and rng.random() < 0.1:
        return Partition(WeightFunction.zero(ctx.p, ctx.n), ())
    a = random_weight(ctx, rng, fractional=None if kind is None else kind != "int")
    order = a.order
    rest = [i for i in order[1:] if rng.random() < 0.5]
    if kind == "frp":
        indices = rest
    elif kind == "dfrp":
        indices = [order[0], *rest]
    else:
        indices = ([order[0]] if rng.random() < 0.5 else []) + rest
    return Partition(a, tuple(indices))


def random_scalar(ctx: Context, rng: random.Random, max_val: int = 2) -> int:
    """A nonzero residue mod p^M with V-adic valuation at most ``max_val``."""
    v = rng.randint(0, min(max_val, ctx.M - 1))
    unit = rng.randrange(1, ctx.p ** (ctx.M - v))
    while unit % ctx.p == 0:
        unit = rng.randrange(1, ctx.p ** (ctx.M - v))
    return ctx.p**v * unit


def random_element(
    ctx: Context,
    rng: random.Random,
    *,
    max_terms: int = 5,
    kind: str | None = None,
    degree: int | None = None,
    max_val: int = 2,
) -> DRWElement:
    """A nonzero random element with at most ``max_terms`` terms."""
    while True:
        raw = {}
        for _ in range(rng.randint(1, max_terms)):
            key = random_key(ctx, rng, kind)
            if degree is not None:
                key = _force_degree(key, degree, rng)
                if key is None or (kind is not None and summand(key) != kind):
                    continue
            raw[key] = random_scalar(ctx, rng, max_val)
        x = ctx.element(raw)
        if x:
            return x


def _force_degree(key: Partition, degree: int, rng: random.Random) -> Partition | None:
    order = key.base.order
    if degree > len(order):
        return None
    if degree == 0:
        return Partition(key.base, ())
    keep = sorted(rng.sample(range(len(order)), degree))
    return Partition(key.base, tuple(order[r] for r in keep))
