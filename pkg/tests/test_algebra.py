"""Exact polynomial, rational-function and series kernels."""
import pytest
from hypothesis import given, settings, strategies as st

from dihedral.algebra import (
    Poly, Q, RatFunc, Series, SqrtPoly, moebius_involution, poly_from_json, poly_gcd, poly_to_json,
    series_compose, series_pow_rational, squarefree_decomposition, substitute_ratio,
)

x = Poly.gen("x")
a = Poly.gen("a")

rationals = st.builds(lambda p, q: Q(p, q), st.integers(-60, 60), st.integers(1, 12))
nonzero_rationals = rationals.filter(lambda c: c != 0)
polys = st.lists(rationals, max_size=6).map(lambda cs: Poly(cs))
nonzero_polys = st.builds(lambda cs, lead: Poly(cs + [lead]), st.lists(rationals, max_size=5),
                          nonzero_rationals)


# --- oracles -----------------------------------------------------------------

def test_zero_polynomial_degree():
    assert Poly(()).degree == -1
    assert Poly([0, 0]).degree == -1
    assert Poly.const(3).degree == 0


def test_binomial_expansion():
    assert (1 + x) ** 3 == Poly([1, 3, 3, 1])


def test_exact_division_and_remainder():
    q, r = (x ** 3 - 1).divmod(x - 1)
    assert q == x * x + x + 1 and r.is_zero()
    with pytest.raises(ArithmeticError):
        (x ** 2 + 1) / (x - 1)


def test_gcd_is_monic():
    g = poly_gcd(2 * (x - 1) * (x + 2), 6 * (x - 1) * (x - 3))
    assert g == x - 1


def test_squarefree_decomposition():
    p = 3 * (x - 1) ** 2 * (x + 1) ** 3 * (x - 5)
    parts = dict((e, f) for f, e in squarefree_decomposition(p))
    assert parts == {1: x - 5, 2: x - 1, 3: x + 1}


def test_moebius_involution_example():
    # Psi proportional to 4 - x with cap 1 maps to a multiple of 3x - 4.
    assert moebius_involution(4 - x, 1) == 3 * x - 4


def test_substitute_ratio():
    # (x^2)^2 * (1 + 3 (x^2 - 1)/x^2) = x^2 (4 x^2 - 3)
    assert substitute_ratio(1 + 3 * x, x * x - 1, x * x) == 4 * x ** 2 - 3


def test_nested_coefficients():
    p = a * x + 1
    assert p.var == "x" and p.coeff(1) == a
    assert (a * x) * (x * a) == a * a * x * x
    assert (p * p).coeff(1) == 2 * a


def test_ratfunc_reduces_and_compares():
    r = RatFunc(x * x - 1, x - 1)
    assert r.is_polynomial() and r.as_poly() == x + 1
    assert RatFunc(x, x + 1) + RatFunc(1, x + 1) == RatFunc(Poly.const(1), Poly.const(1))


def test_series_inverse_geometric():
    s = Series([1, -1], 8, "z").inverse()
    assert s.coeffs == [1] * 8


def test_series_rational_power_sqrt():
    s = series_pow_rational(Series([1, 1], 6), Q(1, 2))
    assert (s * s).coeffs[:6] == [1, 1, 0, 0, 0, 0]


def test_series_compose_keeps_inner_variable():
    outer = Series([1, 1, 1, 1], 4, "z")
    inner = Series([0, 0, 1], 8, "t")
    c = series_compose(outer, inner)
    assert c.var == "t" and c.coeffs[:7] == [1, 0, 1, 0, 1, 0, 1]


def test_series_compose_requires_zero_constant():
    with pytest.raises(ValueError):
        series_compose(Series([1, 1], 4), Series([1, 1], 4))


def test_sqrtpoly_conjugate_product():
    # (1 + sqrt x)(1 - sqrt x) = 1 - x
    u = SqrtPoly.from_t_poly(Poly([1, 1], "t"))
    prod = u * u.conj()
    assert prod.odd.is_zero() and prod.even_poly() == 1 - x


def test_json_round_trip():
    p = Poly([Q(1, 3), 0, Q(-7, 2)])
    assert poly_to_json(p) == ["1/3", "0", "-7/2"]
    assert poly_from_json(poly_to_json(p)) == p


# --- properties ----------------------------------------------------------------

@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p


@given(polys, nonzero_polys)
def test_division_identity(p, d):
    q, r = p.divmod(d)
    assert q * d + r == p
    assert r.degree < d.degree


@given(nonzero_polys, nonzero_polys)
def test_gcd_divides_both(p, q):
    g = poly_gcd(p, q)
    assert (p % g).is_zero() and (q % g).is_zero()


@given(nonzero_polys, st.integers(min_value=0, max_value=3))
def test_moebius_is_involution(p, extra):
    d = p.degree + extra
    assert moebius_involution(moebius_involution(p, d), d) == p


@given(polys, rationals)
def test_derivative_product_rule(p, c):
    q = x + c
    assert (p * q).diff() == p.diff() * q + p * q.diff()


@settings(max_examples=40)
@given(nonzero_rationals, st.lists(rationals, max_size=4))
def test_series_inverse(c0, cs):
    s = Series([c0] + cs, 10)
    assert (s * s.inverse()).coeffs == [1] + [0] * 9


@settings(max_examples=40)
@given(st.lists(rationals, min_size=1, max_size=4), st.integers(1, 4))
def test_rational_power_roundtrip(cs, m):
    s = Series([1] + cs, 8)
    root = series_pow_rational(s, Q(1, m))
    assert (root ** m).coeffs == s.coeffs[:8] + [0] * (8 - len(s.coeffs[:8]))
