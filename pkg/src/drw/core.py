"""Finitely supported de Rham-Witt elements in the basis of basic elements.

An element is stored as a map from :class:`~drw.weights.Partition` (a weight
function together with a partition of it) to a nonzero residue modulo
``p**M``.  The key ``(a, I)`` stands for the basic element ``e(eta, a, I)``,
whose differential degree is ``#I``.

The actions of ``d``, ``F`` and ``V`` on a single basic element only rescale
its coefficient by a power of p and move it to another key, so every operator
here is written once on "raw" maps (exact integers or rationals) and reused
by both the truncated elements and the exact products in :mod:`drw.product`.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

from .weights import INF, Partition, WeightFunction
from .witt_scalar import WittScalar, valuation, zp_residue

Raw = dict  # Partition -> int | Fraction, exact coefficients


@dataclass(frozen=True)
class Context:
    """Working parameters: the prime, the number of variables and the precision."""

    p: int = 2
    n: int = 2
    M: int = 6

    def __post_init__(self):
        if self.p < 2 or any(self.p % q == 0 for q in range(2, int(self.p**0.5) + 1)):
            raise ValueError(f"p={self.p} is not prime")
        if self.n < 0 or self.M < 1:
            raise ValueError("need n >= 0 and M >= 1")

    @property
    def modulus(self) -> int:
        return self.p**self.M

    def weight(self, values: Iterable) -> WeightFunction:
        a = WeightFunction.of(self.p, values)
        if a.nvars != self.n:
            raise ValueError(f"weight function has {a.nvars} entries, expected {self.n}")
        return a

    def zero(self) -> DRWElement:
        return DRWElement(self, {})

    def one(self) -> DRWElement:
        return self.scalar(1)

    def scalar(self, c: int | Fraction | WittScalar) -> DRWElement:
        return self.basic(c, [0] * self.n)

    def basic(self, eta, a, I: Iterable[int] = ()) -> DRWElement:
        """``e(eta, a, I)``; ``a`` is a weight function or a sequence of values, ``I`` 0-based."""
        if not isinstance(a, WeightFunction):
            a = self.weight(a)
        if isinstance(eta, WittScalar):
            eta = eta.residue
        return self.element({Partition.of(a, I): eta})

    def teich(self, exponents: Iterable[int]) -> DRWElement:
        """The Teichmuller lift of the monomial with the given exponents."""
        a = self.weight(exponents)
        if not a.is_integral():
            raise ValueError("Teichmuller monomials need natural exponents")
        return self.basic(1, a)

    def element(self, raw: Mapping[Partition, int | Fraction]) -> DRWElement:
        """Canonicalise exact coefficients into an element."""
        mod = self.modulus
        terms = {}
        for key, c in raw.items():
            r = zp_residue(c, self.p, self.M) if isinstance(c, Fraction) else c % mod
            if r:
                if key.base.nvars != self.n or key.base.p != self.p:
                    raise ValueError("basic element does not match the context")
                terms[key] = r
        return DRWElement(self, terms)


def term_sort_key(key: Partition):
    return (key.size, key.base.total, key.base.values(), key.indices)


class DRWElement:
    """A canonical finite sum of basic elements, coefficients modulo ``p**M``."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms: dict[Partition, int]):
        self.ctx = ctx
        self.terms = terms

    # ---- structure
    def __iter__(self) -> Iterator[tuple[Partition, int]]:
        for key in sorted(self.terms, key=term_sort_key):
            yield key, self.terms[key]

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, key: Partition) -> WittScalar:
        return WittScalar(self.terms.get(key, 0), self.ctx.p, self.ctx.M)

    def degrees(self) -> set[int]:
        return {k.size for k in self.terms}

    def degree(self) -> int:
        """Degree of a homogeneous nonzero element."""
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError(f"element is not homogeneous of a single degree: {sorted(degs)}")
        return degs.pop()

    def homogeneous(self, j: int) -> DRWElement:
        return self._filter(lambda k: k.size == j)

    def raw(self) -> Raw:
        return dict(self.terms)

    def _same(self, other: DRWElement) -> None:
        if self.ctx != other.ctx:
            raise ValueError(f"elements over different contexts: {self.ctx} vs {other.ctx}")

    def _filter(self, pred: Callable[[Partition], bool]) -> DRWElement:
        return DRWElement(self.ctx, {k: c for k, c in self.terms.items() if pred(k)})

    # ---- group structure
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ctx.scalar(other)
        if not isinstance(other, DRWElement):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ctx, frozenset(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ctx.scalar(other)
        if not isinstance(other, DRWElement):
            return NotImplemented
        self._same(other)
        mod = self.ctx.modulus
        terms = dict(self.terms)
        for k, c in other.terms.items():
            r = (terms.get(k, 0) + c) % mod
            if r:
                terms[k] = r
            else:
                terms.pop(k, None)
        return DRWElement(self.ctx, terms)

    __radd__ = __add__

    def __neg__(self) -> DRWElement:
        mod = self.ctx.modulus
        return DRWElement(self.ctx, {k: (-c) % mod for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ctx.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, WittScalar)):
            return scalar_mul(other, self)
        if not isinstance(other, DRWElement):
            return NotImplemented
        from .product import mul

        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, WittScalar)):
            return scalar_mul(other, self)
        return NotImplemented

    def __pow__(self, k: int) -> DRWElement:
        result = self.ctx.one()
        for _ in range(k):
            result = result * self
        return result

    # ---- operators
    def d(self) -> DRWElement:
        return differential(self)

    def F(self, k: int = 1) -> DRWElement:
        x = self
        for _ in range(k):
            x = frobenius(x)
        return x

    def V(self, k: int = 1) -> DRWElement:
        x = self
        for _ in range(k):
            x = verschiebung(x)
        return x

    def __repr__(self) -> str:
        from .parser import render

        return f"DRWElement({render(self)!r}; p={self.ctx.p}, n={self.ctx.n}, M={self.ctx.M})"

    def __str__(self) -> str:
        from .parser import render

        return render(self)


def zero(ctx: Context) -> DRWElement:
    return ctx.zero()


def one(ctx: Context) -> DRWElement:
    return ctx.one()


def add(x: DRWElement, y: DRWElement) -> DRWElement:
    return x + y


def scalar_mul(c: int | WittScalar, x: DRWElement) -> DRWElement:
    # F is the identity on W(F_p), so pushing c inside V^u(a) changes nothing
    if isinstance(c, WittScalar):
        if (c.p, c.M) != (x.ctx.p, x.ctx.M):
            raise ValueError("scalar does not match the element's context")
        c = c.residue
    return x.ctx.element({k: c * v for k, v in x.terms.items()})


# ---- operators on a single basic element: (new key, coefficient factor)


def d_basic(key: Partition) -> tuple[Partition, int] | None:
    if key.leading_empty:
        return None
    a = key.base
    new = key.with_min()
    if a.valp <= 0:
        return new, 1
    return new, a.p**a.valp


def frobenius_basic(key: Partition) -> tuple[Partition, int]:
    a = key.base
    new = key.scale(1)
    if a.valp < 0 and not key.leading_empty:
        return new, a.p
    return new, 1


def verschiebung_basic(key: Partition) -> tuple[Partition, int]:
    a = key.base
    new = key.scale(-1)
    if a.valp > 0 or (a.valp <= 0 and key.leading_empty):
        return new, a.p
    return new, 1


def apply_raw(raw: Mapping[Partition, int | Fraction], op) -> Raw:
    out: Raw = defaultdict(int)
    for key, c in raw.items():
        r = op(key)
        if r is not None:
            out[r[0]] += c * r[1]
    return {k: c for k, c in out.items() if c}


def d_raw(raw):
    return apply_raw(raw, d_basic)


def frobenius_raw(raw):
    return apply_raw(raw, frobenius_basic)


def verschiebung_raw(raw, k: int = 1):
    for _ in range(k):
        raw = apply_raw(raw, verschiebung_basic)
    return raw


def differential(x: DRWElement) -> DRWElement:
    return x.ctx.element(d_raw(x.terms))


def frobenius(x: DRWElement) -> DRWElement:
    return x.ctx.element(frobenius_raw(x.terms))


def verschiebung(x: DRWElement) -> DRWElement:
    return x.ctx.element(verschiebung_raw(x.terms))


# ---- the integral / pure fractional / d(pure fractional) decomposition


def is_int_key(key: Partition) -> bool:
    return key.base.u == 0


def is_frp_key(key: Partition) -> bool:
    return key.base.u != 0 and not key.leading_empty


def is_dfrp_key(key: Partition) -> bool:
    return key.base.u != 0 and key.leading_empty


def summand(key: Partition) -> str:
    if is_int_key(key):
        return "int"
    return "frp" if is_frp_key(key) else "dfrp"


def project_int(x: DRWElement) -> DRWElement:
    return x._filter(is_int_key)


def project_frp(x: DRWElement) -> DRWElement:
    return x._filter(is_frp_key)


def project_dfrp(x: DRWElement) -> DRWElement:
    return x._filter(is_dfrp_key)


def project_frac(x: DRWElement) -> DRWElement:
    return x._filter(lambda k: k.base.u != 0)


PROJECTIONS = {"int": project_int, "frp": project_frp, "dfrp": project_dfrp}


def dfrp_preimage(y: DRWElement) -> DRWElement:
    """The pure fractional ``y'`` with ``d(y') = y``, for ``y`` in ``d(frp)``."""
    terms = {}
    for key, c in y.terms.items():
        if not is_dfrp_key(key):
            raise ValueError(f"term {key.base} {key.indices} is not in the image of d of the pure fractional part")
        # val_p(a) < 0, so d(e(eta, a, I - min)) = e(eta, a, I) with no extra factor
        terms[key.without_min()] = c
    return DRWElement(y.ctx, terms)


def coefficient_valuations(x: DRWElement) -> dict[Partition, int]:
    return {k: valuation(c, x.ctx.p, x.ctx.M) for k, c in x.terms.items()}


__all__ = [
    "Context",
    "DRWElement",
    "INF",
    "add",
    "differential",
    "dfrp_preimage",
    "frobenius",
    "one",
    "project_dfrp",
    "project_frac",
    "project_frp",
    "project_int",
    "scalar_mul",
    "verschiebung",
    "zero",
]
