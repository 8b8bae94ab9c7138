"""Theta polynomials, the pull-back map, Tchebyshev links and Heun parameters."""
import pytest
from hypothesis import given, strategies as st

from dihedral.algebra import Poly, Q
from dihedral.transforms import (
    heun_parameters, pullback_phi, tchebyshev_pair, theta_hypergeometric, theta_pair,
    theta_tchebyshev_sides,
)

x = Poly.gen("x")


def test_theta_oracles():
    assert (theta_pair(1).theta1, theta_pair(1).theta2) == (Poly.const(1), Poly.const(1))
    assert (theta_pair(2).theta1, theta_pair(2).theta2) == (1 + x, Poly.const(2))
    assert (theta_pair(3).theta1, theta_pair(3).theta2) == (1 + 3 * x, 3 + x)


def test_theta_rejects_nonpositive():
    with pytest.raises(ValueError):
        theta_pair(0)


def test_theta_json():
    assert theta_pair(3).to_json() == {"n": 3, "theta1": ["1", "3"], "theta2": ["3", "1"]}


def test_phi_n3():
    phi = pullback_phi(3)
    assert phi.num * (1 + 3 * x) ** 2 == phi.den * x * (3 + x) ** 2
    assert phi.num(0) == 0


def test_tchebyshev_oracle():
    t, u = tchebyshev_pair(3)
    assert t == 4 * x ** 3 - 3 * x and u == 4 * x ** 2 - 1


def test_heun_parameter_maps():
    h = heun_parameters("square-map", Q(1, 3), Q(1, 5), Q(1, 2))
    assert h.as_tuple() == (Q(2, 3), Q(2, 5), Q(1, 2), Q(1, 2), Q(1, 2), Q(2, 15))
    assert h.epsilon == h.alpha + h.beta - h.gamma - h.delta + 1
    with pytest.raises(ValueError):
        heun_parameters("nope")


@given(st.integers(1, 40))
def test_theta_identities(n):
    tp = theta_pair(n)
    assert tp.theta1.degree == n // 2 and tp.theta2.degree == (n - 1) // 2
    assert tp.theta1 ** 2 - x * tp.theta2 ** 2 == (1 - x) ** n
    sq = x * x
    t1 = sum((c * sq ** i for i, c in enumerate(tp.theta1.coeffs)), Poly.const(0))
    t2 = sum((c * sq ** i for i, c in enumerate(tp.theta2.coeffs)), Poly.const(0))
    assert t1 - x * t2 == (1 - x) ** n


@given(st.integers(1, 16))
def test_hypergeometric_and_tchebyshev_forms(n):
    tp = theta_pair(n)
    assert theta_hypergeometric(n) == (tp.theta1, tp.theta2)
    assert theta_tchebyshev_sides(n) == tchebyshev_pair(n)


@given(st.integers(1, 20))
def test_phi_degree_is_n(n):
    phi = pullback_phi(n)
    assert max(phi.num.degree, phi.den.degree) == n
