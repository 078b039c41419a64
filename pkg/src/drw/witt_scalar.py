"""Truncated Witt vectors of F_p, realised as residues modulo p**M.

Over the prime field the Frobenius is the identity and the Verschiebung is
multiplication by p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class AtLeast(int):
    """Valuation sentinel for a residue that vanishes at the working precision.

    It behaves as the integer ``M`` (a valid lower bound) but prints as ``>=M``.
    """

    def __repr__(self) -> str:
        return f">={int(self)}"

    __str__ = __repr__


def valuation(r: int, p: int, M: int) -> int:
    """p-adic valuation of a residue mod ``p**M``; ``AtLeast(M)`` for zero."""
    r %= p**M
    if r == 0:
        return AtLeast(M)
    v = 0
    while r % p == 0:
        r //= p
        v += 1
    return v


def zp_residue(c: Fraction | int, p: int, M: int) -> int:
    """Image of a p-integral rational in Z/p**M."""
    c = Fraction(c)
    mod = p**M
    if c.denominator % p == 0:
        raise ValueError(f"{c} is not p-integral for p={p}")
    return c.numerator * pow(c.denominator, -1, mod) % mod


def teichmuller_residue(c: int, p: int, M: int) -> int:
    mod = p**M
    x = c % p
    while True:
        y = pow(x, p, mod)
        if y == x:
            return x
        x = y


@dataclass(frozen=True)
class WittScalar:
    residue: int
    p: int
    M: int

    def __post_init__(self):
        if not 0 <= self.residue < self.p**self.M:
            object.__setattr__(self, "residue", self.residue % self.p**self.M)

    def _check(self, other: WittScalar) -> None:
        if (self.p, self.M) != (other.p, other.M):
            raise ValueError(f"mismatched Witt scalars: p={self.p},M={self.M} vs p={other.p},M={other.M}")

    def _coerce(self, other) -> WittScalar:
        if isinstance(other, int):
            return WittScalar(other, self.p, self.M)
        if isinstance(other, WittScalar):
            self._check(other)
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return WittScalar(self.residue + other.residue, self.p, self.M)

    __radd__ = __add__

    def __neg__(self) -> WittScalar:
        return WittScalar(-self.residue, self.p, self.M)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return WittScalar(self.residue * other.residue, self.p, self.M)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return self.residue != 0

    def __int__(self) -> int:
        return self.residue

    def __repr__(self) -> str:
        return f"WittScalar({self.residue} mod {self.p}^{self.M})"


def add(x: WittScalar, y: WittScalar) -> WittScalar:
    x._check(y)
    return x + y


def mul(x: WittScalar, y: WittScalar) -> WittScalar:
    x._check(y)
    return x * y


def mul_zp_rational(c: Fraction | int, x: WittScalar) -> WittScalar:
    return WittScalar(zp_residue(c, x.p, x.M) * x.residue, x.p, x.M)


def teichmuller(c: int, p: int, M: int) -> WittScalar:
    """The multiplicative lift of ``c mod p``: the fixed point of ``x -> x**p`` above it."""
    if not 0 <= c < p:
        raise ValueError(f"expected a residue in [0, {p}), got {c}")
    return WittScalar(teichmuller_residue(c, p, M), p, M)


def frobF(x: WittScalar) -> WittScalar:
    return x


def vershV(x: WittScalar) -> WittScalar:
    return WittScalar(x.p * x.residue, x.p, x.M)


def valV(x: WittScalar) -> int:
    return valuation(x.residue, x.p, x.M)
