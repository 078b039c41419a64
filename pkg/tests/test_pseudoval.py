import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from drw.core import Context
from drw.pseudoval import (
    TABLE,
    check_axioms,
    check_product_table,
    classify,
    compare_gamma_zeta,
    format_value,
    gamma,
    gamma_estimate,
    gamma_counterexample,
    margin,
    zeta,
    zeta_estimate,
)
from drw.sampling import random_element
from strategies import contexts, elements, pairs, seeds

F = Fraction
INF = math.inf
EPS = st.sampled_from([F(1, 3), F(1, 2), F(1)])


class TestEvaluation:
    def test_gamma_examples(self):
        ctx = Context(2, 1, 6)
        assert gamma(ctx.zero(), F(1, 2)) == INF
        assert gamma(ctx.teich([3]).V(2), F(1, 2)) == F(13, 8)
        assert gamma(ctx.teich([1]).d(), F(1, 2)) == F(-1, 2)

    def test_zeta_examples(self):
        assert zeta(Context(2, 1, 6).one(), F(1, 2)) == 0
        assert zeta(Context(2, 1, 6).basic(1, [F(3, 2)]), F(1, 2)) == F(1, 4)
        assert zeta(Context(2, 2, 6).basic(1, [F(1, 2), F(1, 2)], [1]), F(1, 2)) == F(3, 2)

    def test_eps_must_be_positive(self):
        x = Context().one()
        for bad in (0, F(-1, 2)):
            with pytest.raises(ValueError):
                gamma(x, bad)
            with pytest.raises(ValueError):
                zeta(x, bad)

    def test_truncation_flag(self):
        ctx = Context(2, 1, 3)
        x = ctx.basic(4, [0])
        lost = next(iter(ctx.teich([4]).terms))
        est = gamma_estimate(x, F(1, 2), {lost: 8})
        assert est.lower_bound_only and est.value == 3 - 2
        est = gamma_estimate(ctx.basic(1, [0]), F(1, 2), {lost: 8})
        assert not est.lower_bound_only and est.value == 0

    def test_margin_and_format(self):
        assert margin(INF, INF) == INF and margin(1, INF) == -INF and margin(F(3), 1) == 2
        assert format_value(F(3, 2)) == "3/2" and format_value(-INF) == "-inf" and format_value(INF) == "inf"

    @given(contexts, seeds, EPS)
    def test_single_term_closed_forms(self, ctx, seed, eps):
        x = random_element(ctx, random.Random(seed), max_terms=1)
        (key, eta), = x.terms.items()
        v = 0
        while eta % ctx.p == 0:
            eta //= ctx.p
            v += 1
        a = key.base
        factors = key.size + (0 if key.leading_empty else 1)
        assert gamma(x, eps) == v + a.u - eps * a.total
        assert zeta(x, eps) == 2 * ctx.n * v + factors * a.u - eps * a.total


class TestAxioms:
    @given(pairs(), EPS)
    def test_all_axioms(self, xy, eps):
        x, y = xy
        rep = check_axioms(x, y, eps)
        assert rep.passed, rep.margins
        assert not rep.flagged_violation
        assert rep.values["-x"] == rep.values["x"]

    @given(elements(), EPS)
    def test_d_does_not_decrease_zeta(self, x, eps):
        assert zeta(x.d(), eps) >= zeta(x, eps)

    @given(elements(), EPS)
    def test_f_and_v_keep_zeta_finite(self, x, eps):
        assert zeta(x, eps) != INF
        for y in (x.F(), x.V()):
            assert zeta(y, eps) > -INF


class TestProductTable:
    def test_classify(self):
        ctx = Context(2, 1, 6)
        assert classify(ctx.teich([1])) == "int"
        assert classify(ctx.basic(1, [F(1, 2)])) == "frp"
        assert classify(ctx.basic(1, [F(1, 2)], [0])) == "dfrp"
        with pytest.raises(ValueError):
            classify(ctx.teich([1]) + ctx.basic(1, [F(1, 2)]))
        with pytest.raises(ValueError):
            check_product_table(ctx.teich([1]) + ctx.basic(1, [F(1, 2)]), ctx.one(), F(1, 2))

    def test_table_shape(self):
        vanishing = [(row, k) for row, cells in TABLE.items() for k, c in cells.items() if c is None]
        assert len(TABLE) == 6 and len(vanishing) == 5
        assert TABLE[("frp", "frp")] == {"int": 2, "frp": 1, "dfrp": 3}

    def test_integral_row(self):
        ctx = Context(2, 2, 6)
        rep = check_product_table(ctx.teich([1, 2]) + ctx.teich([0, 1]).d(), ctx.teich([3, 0]), F(1, 2))
        assert rep.row == ("int", "int") and rep.passed
        assert [c.margin for c in rep.cells if c.constant is None] == [INF, INF]

    def test_dfrp_squared_has_no_frp_part(self):
        ctx = Context(2, 2, 6)
        x = ctx.basic(1, [F(1, 2), 0], [0])
        y = ctx.basic(1, [0, F(1, 4)], [1])
        rep = check_product_table(x, y, F(1, 3))
        assert rep.row == ("dfrp", "dfrp") and rep.passed

    @given(contexts, seeds, st.sampled_from(list(TABLE)), EPS)
    def test_random_rows(self, ctx, seed, row, eps):
        rng = random.Random(seed)
        x = random_element(ctx, rng, kind=row[0])
        y = random_element(ctx, rng, kind=row[1])
        for a, b in ((x, y), (y, x)):
            rep = check_product_table(a, b, eps)
            assert rep.row == row
            assert rep.passed, [(c.projection, c.margin) for c in rep.cells]


class TestCounterexamples:
    @pytest.mark.parametrize("which", [1, 2])
    @pytest.mark.parametrize("p", [2, 3])
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_closed_forms(self, which, p, m):
        eps = F(1, 2)
        r = gamma_counterexample(which, m, Context(p, 2, 6), eps)
        pm = p**m
        assert r.gamma_x == m - eps * F(pm - 1, pm)
        assert r.gamma_y == m - eps / pm
        assert r.gamma_xy == m - eps
        assert r.violated and r.product_identity and r.reproduced

    def test_small_case_values(self):
        r = gamma_counterexample(1, 1, Context(2, 1, 6), F(1, 2))
        assert (r.gamma_x, r.gamma_y, r.gamma_xy) == (F(3, 4), F(3, 4), F(1, 2))
        r = gamma_counterexample(1, 2, Context(2, 1, 6), F(1, 2))
        assert (r.gamma_x, r.gamma_y, r.gamma_xy) == (F(13, 8), F(15, 8), F(3, 2))

    def test_preconditions(self):
        with pytest.raises(ValueError):
            gamma_counterexample(1, 0, Context(2, 1, 6), F(1, 2))
        with pytest.raises(ValueError):
            gamma_counterexample(1, 6, Context(2, 1, 6), F(1, 2))
        with pytest.raises(ValueError):
            gamma_counterexample(2, 1, Context(2, 1, 6), F(1, 2))


class TestSandwich:
    def test_trivial_cases(self):
        ctx = Context(2, 2, 6)
        r = compare_gamma_zeta(ctx.one(), F(1, 2))
        assert (r.upper, r.middle, r.lower) == (0, 0, 0)
        r = compare_gamma_zeta(ctx.zero(), F(1, 2))
        assert (r.upper, r.middle, r.lower) == (INF, INF, INF) and r.holds
        with pytest.raises(ValueError):
            compare_gamma_zeta(Context(2, 0, 6).one(), F(1, 2))

    @given(elements(), EPS)
    def test_random(self, x, eps):
        assert compare_gamma_zeta(x, eps).holds


def test_estimates_without_truncation_are_exact():
    ctx = Context(3, 2, 4)
    x = random_element(ctx, random.Random(3))
    assert not zeta_estimate(x, 1).lower_bound_only
