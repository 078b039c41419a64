"""The graded product of de Rham-Witt elements.

Products of basic elements are reduced to integral weights by conjugating with
the Verschiebung, expanded into products of the auxiliary elements

    h(a, I) = prod_{i in Supp(a) - I} [X_i]^{a_i} * prod_{j in I} g(a|{j}),

multiplied there, and re-expanded into basic elements.  Coefficients stay exact
(p-integral rationals) until the very end, where they are reduced mod p**M.

Sign conventions: the 1-forms ``g(a|{j})`` inside ``h(a, I)`` are multiplied in
increasing variable index, while the factors of ``e(eta, a, I)`` follow the
order of the partition blocks ``I_1, ..., I_m``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import DRWElement, Raw, d_basic, d_raw, verschiebung_raw
from .weights import Partition, WeightFunction, prime_to_p_part, val_p


@dataclass(frozen=True)
class HElement:
    """``h(a, I)`` for an integral weight ``a`` and ``I`` a subset of its support."""

    a: WeightFunction
    I: frozenset[int]

    def __post_init__(self):
        if not self.a.is_integral():
            raise ValueError(f"h(a, I) needs an integral weight, got {self.a}")
        if not self.I <= self.a.support:
            raise ValueError("I must lie in the support of a")


def teichmuller_product_coeff(m: int, m2: int, p: int) -> tuple[Fraction, int, int]:
    """Rewrite ``[x]^m d([x]^m2)`` as ``coeff * F^aexp(d([x]^b))``; returns ``(coeff, aexp, b)``."""
    if m < 0 or m2 < 0 or m + m2 == 0:
        raise ValueError("need natural m, m' with m + m' != 0")
    aexp = val_p(m + m2, p)
    b = (m + m2) // p**aexp
    return Fraction(m2, b), aexp, b


def _shuffle_sign(I, J) -> int:
    inversions = sum(1 for i in I for j in J if i > j)
    return -1 if inversions % 2 else 1


def _absorb_coeff(own: int, other: int, p: int) -> Fraction:
    """Coefficient of ``[X]^other * g(own at one variable)`` against ``g(own + other)``."""
    if other == 0:
        return Fraction(1)
    # g(c) = F^v d([X]^{c'}) = [X]^{c - c'} d([X]^{c'}) with c' the prime-to-p part
    cp = prime_to_p_part(own, p)
    coeff, _, _ = teichmuller_product_coeff(own + other - cp, cp, p)
    return coeff


def mul_h(h1: HElement, h2: HElement) -> tuple[Fraction, HElement] | None:
    """``h(a, I) h(b, J) = m h(a + b, I u J)``, or ``None`` when ``I`` and ``J`` meet."""
    if h1.I & h2.I:
        return None
    p = h1.a.p
    a, b = h1.a.integers(), h2.a.integers()
    coeff = Fraction(_shuffle_sign(sorted(h1.I), sorted(h2.I)))
    for i in h1.I:
        coeff *= _absorb_coeff(a[i], b[i], p)
    for j in h2.I:
        coeff *= _absorb_coeff(b[j], a[j], p)
    return coeff, HElement(h1.a + h2.a, h1.I | h2.I)


def expand_g(a: WeightFunction) -> list[tuple[int, HElement]]:
    """``g(a) = sum_j p^(val_p(a_j) - val_p(a)) h(a, {j})`` for integral nonzero ``a``."""
    if a.is_zero() or not a.is_integral():
        raise ValueError(f"g expansion needs a nonzero integral weight, got {a}")
    p, v = a.p, a.valp
    return [(p ** (a.entry_valp(j) - v), HElement(a, frozenset({j}))) for j in sorted(a.support)]


def _permutation_sign(seq, key) -> int:
    items = [key(x) for x in seq]
    inversions = sum(1 for x in range(len(items)) for y in range(x + 1, len(items)) if items[x] > items[y])
    return -1 if inversions % 2 else 1


@lru_cache(maxsize=None)
def _expand_ordered(a: WeightFunction, I: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Expand ``h(a, I)``, with its 1-forms taken in the order of ``I``, in basic elements.

    Peels off the largest index ``i_m`` of ``I``:

        h(a, I) = h(a', I - i_m) g(a|I_m) - p^(v_next - v_{i_m}) h(a'', I - i_m) g(a|I_m - i_m)

    where ``a'`` drops ``I_m`` and ``a''`` drops ``I_m - {i_m}``; each product of an
    expanded ``e(1, ., J)`` with the trailing ``g`` is ``e(1, a, J + next)``.
    """
    if not I:
        return (((), 1),)
    order = a.order
    last, rest = I[-1], I[:-1]
    pos = order.index(last)
    out: dict[tuple[int, ...], int] = defaultdict(int)
    for J, c in _expand_ordered(a.restrict(order[:pos]), rest):
        out[(*J, last)] += c
    if pos + 1 < len(order):
        nxt = order[pos + 1]
        factor = a.p ** (a.entry_valp(nxt) - a.entry_valp(last))
        for J, c in _expand_ordered(a.restrict(order[: pos + 1]), rest):
            out[(*J, nxt)] -= factor * c
    return tuple((J, c) for J, c in out.items() if c)


def expand_h_raw(h: HElement) -> dict[Partition, int]:
    a = h.a
    rank = {i: r for r, i in enumerate(a.order)}
    ordered = tuple(sorted(h.I, key=rank.__getitem__))
    sign = _permutation_sign(sorted(h.I), rank.__getitem__)
    return {Partition(a, J): sign * c for J, c in _expand_ordered(a, ordered)}


def expand_h(h: HElement, ctx) -> DRWElement:
    return ctx.element(expand_h_raw(h))


@lru_cache(maxsize=None)
def _e_as_h(key: Partition) -> tuple[tuple[Fraction, HElement], ...]:
    """``e(1, a, I)`` for integral ``a`` as a combination of ``h(a, K)`` with ``#K = #I``."""
    a = key.base
    blocks = key.intervals
    acc = [(Fraction(1), HElement(a.restrict(blocks[0]), frozenset()))]
    for block in blocks[1:]:
        nxt = []
        for c, h in acc:
            for cg, hg in expand_g(a.restrict(block)):
                r = mul_h(h, hg)
                if r is not None:
                    nxt.append((c * cg * r[0], r[1]))
        acc = nxt
    return tuple(acc)


@lru_cache(maxsize=None)
def _mul_basic_integral(k1: Partition, k2: Partition) -> tuple[tuple[Partition, Fraction], ...]:
    out: dict[Partition, Fraction] = defaultdict(Fraction)
    for c1, h1 in _e_as_h(k1):
        for c2, h2 in _e_as_h(k2):
            r = mul_h(h1, h2)
            if r is None:
                continue
            m, h = r
            for L, s in expand_h_raw(h).items():
                out[L] += c1 * c2 * m * s
    return tuple((L, c) for L, c in out.items() if c)


def mul_e_integral(t1: tuple, t2: tuple) -> Raw:
    """Product of basic elements ``(eta, key)`` with integral weights, exact coefficients."""
    (eta1, k1), (eta2, k2) = t1, t2
    if not (k1.base.is_integral() and k2.base.is_integral()):
        raise ValueError("mul_e_integral needs integral weights")
    eta = eta1 * eta2
    return {L: eta * c for L, c in _mul_basic_integral(k1, k2)}


def _scale(raw: Raw, c) -> Raw:
    return {k: v * c for k, v in raw.items() if v * c}


def _add_into(acc: Raw, raw: Raw) -> None:
    for k, v in raw.items():
        acc[k] = acc.get(k, 0) + v


def mul_e(t1: tuple, t2: tuple) -> Raw:
    """Product of two basic elements given as ``(eta, key)``; exact coefficients."""
    (eta1, k1), (eta2, k2) = t1, t2
    a, b = k1.base, k2.base
    if a.is_zero():
        return {k2: eta1 * eta2}
    if b.is_zero():
        return {k1: eta1 * eta2}
    ua, ub = a.u, b.u
    if ua == 0 and ub == 0:
        return mul_e_integral(t1, t2)
    swap_sign = -1 if (k1.size * k2.size) % 2 else 1
    if ub > ua:
        return _scale(mul_e(t2, t1), swap_sign)
    if not k1.leading_empty:
        # e(eta,a,I) e(eta',b,J) = V^u(a)( e(eta, p^u a, I) e(p^v eta', p^u b, J) )
        v = ub if not k2.leading_empty else 0
        inner = mul_e_integral((eta1, k1.scale(ua)), (eta2 * a.p**v, k2.scale(ua)))
        return verschiebung_raw(inner, ua)
    if ua == ub and not k2.leading_empty:
        return _scale(mul_e(t2, t1), swap_sign)
    # first factor is d(e(eta, a, I - min a)); Leibniz moves d outside
    lower = (eta1, k1.without_min())
    result = d_raw(mul_e(lower, t2))
    dk2 = d_basic(k2)
    if dk2 is not None:
        sign = -1 if k1.size % 2 else 1
        _add_into(result, _scale(mul_e(lower, (eta2 * dk2[1], dk2[0])), sign))
    return {k: c for k, c in result.items() if c}


def mul_exact(x: DRWElement, y: DRWElement) -> Raw:
    """The product with exact coefficients, before reduction mod ``p**M``.

    The inputs' residues are taken as exact elements of W(F_p) = Z_p.
    """
    if x.ctx != y.ctx:
        raise ValueError(f"elements over different contexts: {x.ctx} vs {y.ctx}")
    acc: Raw = {}
    for k1, c1 in x.terms.items():
        for k2, c2 in y.terms.items():
            _add_into(acc, mul_e((c1, k1), (c2, k2)))
    return {k: c for k, c in acc.items() if c}


def mul(x: DRWElement, y: DRWElement) -> DRWElement:
    return x.ctx.element(mul_exact(x, y))


def mul_with_truncation(x: DRWElement, y: DRWElement) -> tuple[DRWElement, Raw]:
    """The product together with the exact terms that vanish mod ``p**M``."""
    exact = mul_exact(x, y)
    result = x.ctx.element(exact)
    dropped = {k: c for k, c in exact.items() if k not in result.terms}
    return result, dropped
