"""Weight functions with values in N[1/p], the order on their support, and partitions.

Variable indices are 0-based here; the text and JSON front ends shift them to
the 1-based ``X1..Xn`` convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple

INF = math.inf


def val_p(n: int, p: int) -> float | int:
    """p-adic valuation of an integer, ``inf`` for zero."""
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def prime_to_p_part(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n


class PAdicRational(NamedTuple):
    """The non-negative number ``mantissa * p**(-vexp)``, with ``p`` not dividing ``mantissa``."""

    mantissa: int
    vexp: int

    @classmethod
    def from_value(cls, q: int | Fraction | str, p: int) -> PAdicRational:
        q = Fraction(q)
        if q < 0:
            raise ValueError(f"weights are non-negative, got {q}")
        if q == 0:
            return ZERO
        den = q.denominator
        e = 0
        while den % p == 0:
            den //= p
            e += 1
        if den != 1:
            raise ValueError(f"{q} is not in N[1/p] for p={p}")
        m = q.numerator
        while m % p == 0:
            m //= p
            e -= 1
        return cls(m, e)

    def valp(self) -> float | int:
        return INF if self.mantissa == 0 else -self.vexp

    def value(self, p: int) -> Fraction:
        if self.vexp >= 0:
            return Fraction(self.mantissa, p**self.vexp)
        return Fraction(self.mantissa * p ** (-self.vexp))

    def shift(self, k: int) -> PAdicRational:
        """Multiply by ``p**k``."""
        if self.mantissa == 0:
            return self
        return PAdicRational(self.mantissa, self.vexp - k)


ZERO = PAdicRational(0, 0)


@dataclass(frozen=True)
class WeightFunction:
    p: int
    entries: tuple[PAdicRational, ...]

    @classmethod
    def of(cls, p: int, values: Iterable[int | Fraction | str]) -> WeightFunction:
        return cls(p, tuple(PAdicRational.from_value(v, p) for v in values))

    @classmethod
    def zero(cls, p: int, n: int) -> WeightFunction:
        return cls(p, (ZERO,) * n)

    @property
    def nvars(self) -> int:
        return len(self.entries)

    def values(self) -> tuple[Fraction, ...]:
        return tuple(e.value(self.p) for e in self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i].value(self.p)

    def entry_valp(self, i: int) -> float | int:
        return self.entries[i].valp()

    @cached_property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.entries) if e.mantissa)

    def is_zero(self) -> bool:
        return not self.support

    @cached_property
    def valp(self) -> float | int:
        return min((e.valp() for e in self.entries), default=INF)

    @cached_property
    def u(self) -> int:
        v = self.valp
        return 0 if v == INF else max(0, -v)

    def is_integral(self) -> bool:
        return self.u == 0

    @cached_property
    def total(self) -> Fraction:
        return sum(self.values(), Fraction(0))

    @cached_property
    def order(self) -> tuple[int, ...]:
        """The support listed increasingly for the order: valuation first, then index."""
        return tuple(sorted(self.support, key=lambda i: (-self.entries[i].vexp, i)))

    @cached_property
    def _rank(self) -> dict[int, int]:
        return {i: r for r, i in enumerate(self.order)}

    def precede(self, i: int, j: int) -> bool:
        """Whether ``i`` comes no later than ``j`` in the order on the support."""
        rank = self._rank
        if i not in rank or j not in rank:
            raise ValueError(f"indices {i}, {j} must lie in the support {sorted(self.support)}")
        return rank[i] <= rank[j]

    def min_index(self) -> int:
        if not self.order:
            raise ValueError("the zero weight function has no minimum")
        return self.order[0]

    def successor(self, i: int) -> int | None:
        r = self._rank[i] + 1
        return self.order[r] if r < len(self.order) else None

    def restrict(self, J: Iterable[int]) -> WeightFunction:
        J = set(J)
        return WeightFunction(self.p, tuple(e if i in J else ZERO for i, e in enumerate(self.entries)))

    def scale(self, k: int) -> WeightFunction:
        """Multiply every entry by ``p**k`` (``k`` may be negative)."""
        return WeightFunction(self.p, tuple(e.shift(k) for e in self.entries))

    def integers(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise ValueError("weight function is not integral")
        return tuple(int(v) for v in self.values())

    def __add__(self, other: WeightFunction) -> WeightFunction:
        if self.p != other.p or self.nvars != other.nvars:
            raise ValueError("weight functions over different p or number of variables")
        return WeightFunction.of(self.p, (x + y for x, y in zip(self.values(), other.values())))

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.values()) + ")"


def support(a: WeightFunction) -> frozenset[int]:
    return a.support


def valp(a: WeightFunction) -> float | int:
    return a.valp


def u(a: WeightFunction) -> int:
    return a.u


def restrict(a: WeightFunction, J: Iterable[int]) -> WeightFunction:
    return a.restrict(J)


def precede(a: WeightFunction, i: int, j: int) -> bool:
    return a.precede(i, j)


def min_index(a: WeightFunction) -> int:
    return a.min_index()


def total_weight(a: WeightFunction) -> Fraction:
    return a.total


@dataclass(frozen=True)
class Partition:
    """A subset of the support of ``base``, stored in increasing order."""

    base: WeightFunction
    indices: tuple[int, ...]

    def __post_init__(self):
        rank = self.base._rank
        for i in self.indices:
            if i not in rank:
                raise ValueError(f"index {i + 1} is outside the support of {self.base}")
        if any(rank[x] >= rank[y] for x, y in zip(self.indices, self.indices[1:])):
            raise ValueError(f"partition indices {self.indices} are not strictly increasing")

    @classmethod
    def of(cls, base: WeightFunction, indices: Iterable[int] = ()) -> Partition:
        """Build from an unordered collection of indices."""
        idx = set(indices)
        rank = base._rank
        missing = [i + 1 for i in idx if i not in rank]
        if missing:
            raise ValueError(f"indices {missing} are outside the support of {base}")
        return cls(base, tuple(sorted(idx, key=rank.__getitem__)))

    @property
    def size(self) -> int:
        return len(self.indices)

    @cached_property
    def intervals(self) -> tuple[tuple[int, ...], ...]:
        """The blocks ``I_0, ..., I_m`` cut out of the ordered support by the partition."""
        order = self.base.order
        rank = self.base._rank
        cuts = [rank[i] for i in self.indices]
        bounds = [0, *cuts, len(order)]
        return tuple(order[bounds[l]:bounds[l + 1]] for l in range(len(bounds) - 1))

    @cached_property
    def leading_empty(self) -> bool:
        """Whether ``I_0`` is empty."""
        return not self.intervals[0]

    def without_min(self) -> Partition:
        return Partition(self.base, self.indices[1:])

    def with_min(self) -> Partition:
        return Partition(self.base, (self.base.min_index(), *self.indices))

    def scale(self, k: int) -> Partition:
        # scaling by a power of p leaves the order unchanged
        return Partition(self.base.scale(k), self.indices)


def intervals(I: Partition) -> tuple[tuple[int, ...], ...]:
    return I.intervals

