"""Degree-0 oracle: Witt vector coordinates over Z[X_1..X_n] via ghost components.

Everything is computed with integer polynomials; coordinates are reduced mod p
only when two results are compared, since ghost components are injective only
on rings without p-torsion.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from sympy.polys.domains import ZZ
from sympy.polys.rings import PolyElement, ring

from .core import DRWElement
from .witt_scalar import teichmuller_residue


@lru_cache(maxsize=None)
def poly_ring(n: int):
    names = ",".join(f"X{i + 1}" for i in range(n)) if n else "X1"
    return ring(names, ZZ)[0]


@dataclass(frozen=True)
class IntPolyWitt:
    p: int
    coords: tuple[PolyElement, ...]

    @property
    def length(self) -> int:
        return len(self.coords)

    def reduced(self) -> tuple[PolyElement, ...]:
        """Coordinates with coefficients reduced into ``[0, p)``, i.e. the image in W_M(F_p[X])."""
        return tuple(c.ring.from_dict({m: v % self.p for m, v in c.items() if v % self.p}) for c in self.coords)

    def equal_mod_p(self, other: IntPolyWitt) -> bool:
        return self.p == other.p and self.reduced() == other.reduced()


def ghost(w: IntPolyWitt) -> tuple[PolyElement, ...]:
    p = w.p
    return tuple(sum((p**i * w.coords[i] ** (p ** (k - i)) for i in range(k + 1)), w.coords[0].ring.zero) for k in range(w.length))


def unghost(g, p: int) -> IntPolyWitt:
    """Invert :func:`ghost`; a non-exact division raises ``ExactQuotientFailed``."""
    xs = []
    for k, gk in enumerate(g):
        rest = gk - sum((p**i * xs[i] ** (p ** (k - i)) for i in range(k)), gk.ring.zero)
        xs.append(rest.exquo(gk.ring(p**k)) if k else rest)
    return IntPolyWitt(p, tuple(xs))


def _check(w1: IntPolyWitt, w2: IntPolyWitt) -> None:
    if w1.p != w2.p or w1.length != w2.length:
        raise ValueError("Witt vectors of different prime or length")


def witt_add(w1: IntPolyWitt, w2: IntPolyWitt) -> IntPolyWitt:
    _check(w1, w2)
    return unghost([a + b for a, b in zip(ghost(w1), ghost(w2))], w1.p)


def witt_mul(w1: IntPolyWitt, w2: IntPolyWitt) -> IntPolyWitt:
    _check(w1, w2)
    return unghost([a * b for a, b in zip(ghost(w1), ghost(w2))], w1.p)


def verschiebung_w(w: IntPolyWitt) -> IntPolyWitt:
    return IntPolyWitt(w.p, (w.coords[0].ring.zero, *w.coords[:-1]))


def frobenius_w(w: IntPolyWitt) -> IntPolyWitt:
    """Frobenius; the result is one coordinate shorter."""
    if w.length < 2:
        raise ValueError("Frobenius needs at least two coordinates")
    return unghost(ghost(w)[1:], w.p)


def teich(f: PolyElement, p: int, M: int) -> IntPolyWitt:
    return IntPolyWitt(p, (f, *[f.ring.zero] * (M - 1)))


def zero_w(R, p: int, M: int) -> IntPolyWitt:
    return IntPolyWitt(p, (R.zero,) * M)


def scalar_to_coords(eta: int, p: int, M: int, R=None) -> IntPolyWitt:
    """Teichmuller digits of ``eta`` in W_M(F_p) = Z/p^M, as constant polynomials."""
    R = R or poly_ring(1)
    digits = []
    r = eta % p**M
    for i in range(M):
        prec = M - i
        c = r % p
        digits.append(c)
        r = (r - teichmuller_residue(c, p, prec)) % p**prec // p
    return IntPolyWitt(p, tuple(R(c) for c in digits))


def eval_degree0(x: DRWElement) -> IntPolyWitt:
    """Coordinates of a degree-0 element in W_M(Z[X]) (reduce mod p before comparing)."""
    p, M, n = x.ctx.p, x.ctx.M, x.ctx.n
    R = poly_ring(n)
    total = [R.zero] * M
    for key, eta in x.terms.items():
        if key.size:
            raise ValueError("eval_degree0 needs an element of degree 0")
        a = key.base
        ua = a.u
        if ua >= M:
            continue
        exps = a.scale(ua).integers()
        mono = R.from_dict({tuple(exps) if n else (0,): 1})
        w = witt_mul(scalar_to_coords(eta, p, M, R), teich(mono, p, M))
        for _ in range(ua):
            w = verschiebung_w(w)
        for k, gk in enumerate(ghost(w)):
            total[k] += gk
    return unghost(total, p)


def oracle_equal(x: DRWElement, y: DRWElement) -> bool:
    return eval_degree0(x).equal_mod_p(eval_degree0(y))
