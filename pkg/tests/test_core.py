from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from drw.core import (
    Context,
    dfrp_preimage,
    project_dfrp,
    project_frac,
    project_frp,
    project_int,
    scalar_mul,
)
from drw.witt_scalar import WittScalar
from forms_model import model_d, model_F, model_V
from strategies import contexts, elements

F = Fraction
C2 = Context(2, 1, 6)
C2_3 = Context(2, 1, 3)


def e(ctx, eta, a, I=()):
    return ctx.basic(eta, a, I)


class TestGroup:
    def test_zero_and_one(self):
        x = e(C2, 3, [F(3, 2)], [0]) + e(C2, 1, [1])
        assert C2.zero() + x == x
        assert C2.one() * x == x
        assert len(C2.one()) == 1

    def test_cancellation_mod_precision(self):
        x = e(C2, 1, [F(1, 2)])
        assert x + e(C2, 2**6 - 1, [F(1, 2)]) == C2.zero()
        assert x + (-x) == C2.zero()

    def test_disjoint_keys(self):
        x, y = e(C2, 1, [1]), e(C2, 1, [1], [0])
        assert len(x + y) == 2

    def test_context_mismatch(self):
        with pytest.raises(ValueError):
            e(C2, 1, [1]) + e(C2_3, 1, [1])

    def test_scalar_mul(self):
        x = e(C2, 5, [F(1, 4)], [0]) + e(C2, 3, [2])
        assert scalar_mul(1, x) == x
        assert scalar_mul(0, x) == C2.zero()
        assert scalar_mul(2, e(C2_3, 3, [1])) == e(C2_3, 6, [1])
        assert scalar_mul(WittScalar(2, 2, 3), e(C2_3, 3, [1])) == e(C2_3, 6, [1])

    def test_scalar_terms(self):
        assert C2.scalar(7) == e(C2, 7, [0])
        with pytest.raises(ValueError):
            C2.basic(1, [0], [0])


class TestOperators:
    def test_d(self):
        assert e(C2, 1, [1]).d() == e(C2, 1, [1], [0])
        assert e(C2_3, 1, [2]).d() == e(C2_3, 2, [2], [0])
        assert e(C2, 1, [F(1, 2)], [0]).d() == C2.zero()

    def test_frobenius(self):
        assert e(C2, 1, [1]).F() == e(C2, 1, [2])
        assert e(C2_3, 1, [F(1, 2)]).F() == e(C2_3, 2, [1])
        assert e(C2, 1, [F(1, 2)], [0]).F() == e(C2, 1, [1], [0])

    def test_verschiebung(self):
        assert e(C2, 1, [1]).V() == e(C2, 1, [F(1, 2)])
        assert e(C2_3, 1, [2]).V() == e(C2_3, 2, [1])
        assert e(C2, 1, [1], [0]).V() == e(C2, 2, [F(1, 2)], [0])

    def test_cross_checks(self):
        x = C2.teich([1])
        assert x.V().F() == 2 * x
        assert x.V().d().F() == x.d()


class TestDecomposition:
    def test_dfrp_example(self):
        y = e(C2, 1, [F(1, 2)], [0])
        assert project_dfrp(y) == y
        assert dfrp_preimage(y) == e(C2, 1, [F(1, 2)])
        with pytest.raises(ValueError):
            dfrp_preimage(e(C2, 1, [1]))

    @given(elements())
    def test_projections(self, x):
        i, f, df = project_int(x), project_frp(x), project_dfrp(x)
        assert i + f + df == x
        assert project_frac(x) == f + df
        for proj, part in ((project_int, i), (project_frp, f), (project_dfrp, df)):
            assert proj(part) == part
        for proj in (project_frp, project_dfrp):
            assert proj(i) == x.ctx.zero()
        assert project_int(f) == project_dfrp(f) == project_frp(df) == x.ctx.zero()

    @given(elements(kind="dfrp"))
    def test_dfrp_round_trip(self, y):
        pre = dfrp_preimage(y)
        assert project_frp(pre) == pre
        assert pre.d() == y


class TestIdentities:
    @given(elements(max_terms=20))
    def test_d_squared(self, x):
        assert x.d().d() == x.ctx.zero()

    @given(elements(), st.integers(1, 3))
    def test_d_frobenius(self, x, m):
        assert x.F(m).d() == x.d().F(m) * (x.ctx.p**m)

    @given(elements())
    def test_fv_vf(self, x):
        p = x.ctx.p
        assert x.V().F() == p * x
        assert x.F().V() == p * x

    @given(elements())
    def test_operators_against_forms_model(self, x):
        assert x.d() == model_d(x)
        assert x.F() == model_F(x)
        assert x.V() == model_V(x)

    @given(elements())
    def test_degree_bookkeeping(self, x):
        for key, _ in x:
            assert x.homogeneous(key.size).degrees() == {key.size}
        assert x.d().degrees() <= {j + 1 for j in x.degrees()}


@given(contexts, st.integers(0, 2**20))
def test_canonical_sort_is_deterministic(ctx, seed):
    import random

    from drw.sampling import random_element

    x = random_element(ctx, random.Random(seed))
    y = ctx.element(dict(reversed(list(x.terms.items()))))
    assert list(x) == list(y)
    assert x == y and hash(x) == hash(y)
