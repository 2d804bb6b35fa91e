import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goldens import (
    A11_MOD7,
    A11_MOD7_INPUT,
    FINITE_RANK2,
    MIXED_MOD9,
    MIXED_MOD9_INPUT,
    NON_AFFINE_MOD7,
    REFERENCE_RUNS,
    affine_a11,
    affine_a22,
    product,
)
from scatterlab.dilogprod import (
    DilogFactor,
    canonical_sort,
    decompose_unit,
    is_anti_ordered,
    is_ordered,
    join,
    order,
    pentagon_rewrite,
)
from scatterlab.seriesrep import products_equivalent
from scatterlab.suites import RANK2, random_anti_ordered


def F(n, c=1):
    return DilogFactor(tuple(n), Fraction(c))


class TestPredicates:
    def test_single_factor(self):
        assert is_ordered([F((1, 2))]) and is_anti_ordered([F((1, 2))])

    def test_pentagon_sides(self):
        assert is_anti_ordered([F((0, 1)), F((1, 0))])
        assert is_ordered([F((1, 0)), F((1, 1)), F((0, 1))])
        assert not is_ordered([F((0, 1)), F((1, 0))])


class TestRewrites:
    def test_unit_pentagon(self):
        assert pentagon_rewrite(F((0, 1)), F((1, 0))) == [F((1, 0)), F((1, 1)), F((0, 1))]

    def test_half_pentagon(self):
        h = Fraction(1, 2)
        out = pentagon_rewrite(F((1, 2), h), F((1, 0), h))
        assert out == [F((1, 0), h), F((2, 2), h), F((1, 2), h)]

    def test_commuting_pair_rejected(self):
        with pytest.raises(ValueError):
            pentagon_rewrite(F((1, 1)), F((2, 2)))

    def test_wrong_exponent_rejected(self):
        with pytest.raises(ValueError):
            pentagon_rewrite(F((0, 1), 2), F((1, 0)))

    def test_join(self):
        assert join([F((1, 1), 2), F((1, 1), 3)]) == [F((1, 1), 5)]
        C = [F((1, 0)), F((1, 1)), F((0, 1))]
        assert join(C) == C

    def test_decompose(self):
        out = decompose_unit(2, [F((1, 2)), F((1, 0))])
        h = Fraction(1, 2)
        assert out == [F((1, 2), h), F((1, 2), h), F((1, 0), h), F((1, 0), h)]
        with pytest.raises(ValueError):
            decompose_unit(2, [F((1, 2), Fraction(1, 3))])


class TestOrderGoldens:
    @pytest.mark.parametrize("name", sorted(FINITE_RANK2))
    def test_finite_types(self, name):
        src, want = FINITE_RANK2[name]
        assert order(6, product(src)) == product(want)

    def test_affine_mod7(self):
        assert order(7, product(A11_MOD7_INPUT)) == product(A11_MOD7)

    @pytest.mark.parametrize("L", [3, 6, 9, 12, 15])
    def test_affine_closed_forms(self, L):
        assert order(L, product([[0, 1, 2], [1, 0, 2]])) == product(affine_a11(L))
        assert order(L, product([[0, 1, 4], [1, 0, 1]])) == product(affine_a22(L))

    @pytest.mark.parametrize("d", sorted(NON_AFFINE_MOD7))
    def test_non_affine(self, d):
        d1, d2 = d
        assert order(7, product([[0, 1, d2], [1, 0, d1]])) == product(NON_AFFINE_MOD7[d])

    def test_fractional_exponents(self):
        assert order(9, product(MIXED_MOD9_INPUT)) == product(MIXED_MOD9)

    @pytest.mark.parametrize("run", range(len(REFERENCE_RUNS)))
    def test_reference_runs(self, run):
        L, src, want = REFERENCE_RUNS[run]
        assert order(L, product(src)) == product(want)

    def test_high_degree_factors_dropped(self):
        assert order(1, product([[0, 1, 1], [1, 0, 1]])) == product([[0, 1, 1], [1, 0, 1]][::-1])
        assert order(2, [F((3, 1))]) == []

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            order(0, [F((1, 0))])
        with pytest.raises(ValueError):
            order(3, [F((2, 2), Fraction(1, 4))])
        with pytest.raises(ValueError):
            order(3, [F((0, 0))])
        with pytest.raises(ValueError):
            order(3, [F((1, -1))])


def _integral(C):
    return all(f.c > 0 and (f.c * gcd(*f.n)).denominator == 1 for f in C)


@st.composite
def valid_products(draw, anti=False):
    seed = draw(st.integers(0, 10**9))
    rng = random.Random(seed)
    C = random_anti_ordered(rng, size=draw(st.integers(2, 3)))
    if not anti:
        rng.shuffle(C)
    return C


class TestOrderProperties:
    @settings(max_examples=120, deadline=None)
    @given(valid_products(), st.integers(1, 6))
    def test_oracle_equivalence(self, C, L):
        out = order(L, C)
        assert is_ordered(out, canonical=False)
        assert products_equivalent(RANK2, C, out, L)
        assert _integral(out)

    @settings(max_examples=60, deadline=None)
    @given(valid_products(anti=True), st.integers(2, 6), st.integers(0, 10**6))
    def test_selection_order_does_not_matter(self, C, L, seed):
        a = canonical_sort(order(L, C))
        b = canonical_sort(order(L, C, rng=random.Random(seed)))
        assert a == b

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 7))
    def test_boundary_structure(self, d1, d2, L):
        L = max(L, d1 + 1, d2 + 1)
        out = order(L, [F((0, 1), d2), F((1, 0), d1)])
        # alpha = {d2 e2, e1} = d2 and beta = d1 for {e2, e1} = 1
        assert out[0] == F((1, 0), d1)
        assert out[1] == F((d1, 1), d2)
        assert out[-2] == F((1, d2), d1)
        assert out[-1] == F((0, 1), d2)
        for f in out[2:-2]:
            j1, j2 = f.n
            assert Fraction(1, d2) < Fraction(j1, j2) < d1

    @settings(max_examples=40, deadline=None)
    @given(valid_products(), st.integers(1, 5))
    def test_output_is_idempotent(self, C, L):
        out = order(L, C)
        assert order(L, out) == out
