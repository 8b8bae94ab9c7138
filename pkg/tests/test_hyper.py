"""Pochhammer symbols, terminating sums and double sums."""
import pytest
from hypothesis import given, settings, strategies as st

from dihedral.algebra import Poly, Q, Series
from dihedral.hyper import (
    EvaluationError, HyperParams, double_sum_cleared, pfq_coefficients, pfq_series,
    pfq_terminating, pochhammer, terminating_double_sum,
)

x = Poly.gen("x")
a = Poly.gen("a")


def test_pochhammer_oracles():
    assert pochhammer(a, 3) == a ** 3 + 3 * a ** 2 + 2 * a
    assert pochhammer(Q(1, 2), 2) == Q(3, 4)
    assert pochhammer(-3, 5) == 0
    assert pochhammer(7, 0) == 1


def test_terminating_2f1_at_scaled_argument():
    # j = 2 term: (-2)_2 (-3/2)_2 / ((-1/2)_2 2!) (1/4)^2 = -3/16
    p = pfq_terminating([-2, Q(-3, 2)], [Q(-1, 2)], x / 4)
    assert p == 1 - Q(3, 2) * x - Q(3, 16) * x ** 2


def test_terminating_ratio_with_zero_lower():
    # (-k)_p / (-2k)_p is finite for p <= k
    p = pfq_terminating([-2], [-4], x)
    assert p == 1 + x / 2 + x * x / 12


def test_uncancelled_zero_lower_raises_with_index():
    with pytest.raises(EvaluationError, match="index 3"):
        pfq_coefficients([Q(1, 2)], [-2], 5)


def test_nonterminating_requires_series():
    with pytest.raises(EvaluationError):
        pfq_terminating([Q(1, 2)], [1], x)


def test_clearing_matches_rational_coefficients():
    plain = pfq_series([a, 1], [a + 1], 5)
    cleared, d = pfq_series([a, 1], [a + 1], 5, clear=True)
    for j in range(5):
        # a/(a+j) expressed both ways
        assert cleared.coeffs[j] * plain.coeffs[j].den == plain.coeffs[j].num * d


def test_f3_single_term():
    f = terminating_double_sum(HyperParams.F3(2, 1, -1, 0, Q(3, 2)), x, Q(0))
    assert f == 1 - Q(4, 3) * x


def test_f3_trivial_when_k_l_zero():
    assert terminating_double_sum(HyperParams.F3(1, 1, 0, 0, Q(5, 7)), x, x) == 1


def test_f2_symbolic_four_terms():
    y = Q(3)
    f = terminating_double_sum(HyperParams.F2(a, -1, -1, -2, -2), x, y)
    want = 1 + a / 2 * x + a / 2 * y + a * (a + 1) / 4 * x * y
    assert f == want


def test_double_sum_cleared_matches_direct():
    params = HyperParams.F3(2, 3, -1, -2, Q(5, 3))
    one = Poly.const(1)
    val, d, kk, ll = double_sum_cleared(params, (x + 1, x), (one, 1 - x))
    for pt in (Q(2), Q(-3), Q(1, 5)):
        direct = terminating_double_sum(params, (pt + 1) / pt, 1 / (1 - pt))
        assert val(pt) == d * pt ** kk * (1 - pt) ** ll * direct


@settings(max_examples=30)
@given(st.integers(0, 6), st.fractions(min_value=-3, max_value=3, max_denominator=7),
       st.fractions(min_value=Q(1, 3), max_value=5, max_denominator=7))
def test_terminating_agrees_with_truncated_series(k, b, c):
    b, c = Q(b.numerator, b.denominator), Q(c.numerator, c.denominator)
    poly = pfq_terminating([-k, b], [c], x)
    poly = poly if isinstance(poly, Poly) else Poly.const(poly)
    s = pfq_series([-k, b], [c], k + 4)
    assert s.coeffs[:k + 4] == [poly.coeff(i) for i in range(k + 4)]


@settings(max_examples=20)
@given(st.integers(0, 3), st.integers(0, 3))
def test_double_sum_table_respects_bounds(k, l):
    f = terminating_double_sum(HyperParams.F3(k + 1, l + 1, -k, -l, a + 3), x, Series.gen(6, "x"))
    assert isinstance(f, Series)
