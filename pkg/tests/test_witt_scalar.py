from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from drw.witt_scalar import AtLeast, WittScalar, add, frobF, mul, mul_zp_rational, teichmuller, valV, vershV


def S(r, p, M):
    return WittScalar(r % p**M, p, M)


def test_add():
    assert add(S(5, 2, 3), S(5, 2, 3)) == S(2, 2, 3)
    assert add(S(7, 3, 2), S(0, 3, 2)) == S(7, 3, 2)
    assert add(S(8, 3, 2), S(1, 3, 2)) == S(0, 3, 2)


def test_mul():
    assert mul(S(6, 2, 3), S(1, 2, 3)) == S(6, 2, 3)
    assert mul(S(3, 2, 3), S(3, 2, 3)) == S(1, 2, 3)
    assert mul(S(3, 3, 2), S(3, 3, 2)) == S(0, 3, 2)


def test_mismatch():
    with pytest.raises(ValueError):
        add(S(1, 2, 3), S(1, 2, 4))
    with pytest.raises(ValueError):
        mul(S(1, 2, 3), S(1, 3, 3))


def test_mul_zp_rational():
    assert mul_zp_rational(Fraction(1, 3), S(3, 2, 3)) == S(1, 2, 3)
    assert mul_zp_rational(3, S(1, 2, 3)) == S(3, 2, 3)
    with pytest.raises(ValueError):
        mul_zp_rational(Fraction(1, 3), S(1, 3, 3))


def test_teichmuller():
    assert teichmuller(0, 2, 4) == S(0, 2, 4)
    assert teichmuller(1, 2, 4) == S(1, 2, 4)
    assert teichmuller(2, 3, 2) == S(8, 3, 2)
    assert teichmuller(2, 5, 2) == S(7, 5, 2)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_teichmuller_properties(p):
    M = 4
    for c in range(p):
        t = teichmuller(c, p, M)
        assert t.residue % p == c
        assert pow(t.residue, p, p**M) == t.residue
        assert frobF(t) == t
        for c2 in range(p):
            assert teichmuller(c * c2 % p, p, M) == t * teichmuller(c2, p, M)


def test_frobenius_and_verschiebung():
    assert frobF(S(5, 2, 3)) == S(5, 2, 3)
    assert frobF(S(0, 2, 3)) == S(0, 2, 3)
    assert vershV(S(3, 2, 3)) == S(6, 2, 3)
    assert vershV(S(0, 2, 3)) == S(0, 2, 3)


def test_valuation():
    assert valV(S(6, 2, 3)) == 1
    assert valV(S(1, 2, 3)) == 0
    v = valV(S(0, 2, 3))
    assert isinstance(v, AtLeast) and v == 3 and str(v) == ">=3"


scalars = st.tuples(st.sampled_from([2, 3, 5]), st.integers(1, 5)).flatmap(
    lambda pm: st.lists(st.integers(0, pm[0] ** pm[1] - 1), min_size=3, max_size=3).map(
        lambda rs: [WittScalar(r, *pm) for r in rs]
    )
)


@given(scalars)
def test_ring_axioms(xs):
    x, y, z = xs
    zero, one = x * 0, x * 0 + 1
    assert x + y == y + x and x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + zero == x and x * one == x
    assert x + (-x) == zero


@given(scalars)
def test_valuation_superadditive(xs):
    x, y, _ = xs
    assert valV(x * y) >= min(valV(x) + valV(y), x.M)


@given(scalars)
def test_fv_is_p(xs):
    x = xs[0]
    assert vershV(frobF(x)) == frobF(vershV(x)) == x * x.p
