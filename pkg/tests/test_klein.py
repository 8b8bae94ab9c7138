"""Klein pull-back coverings and their certificates."""
import pytest
from hypothesis import given, settings, strategies as st

from dihedral.algebra import Poly, Q
from dihedral.klein import (
    GOLDEN_G, KleinCovering, KleinError, approximation_zeros, branching_certificate,
    c_closed_forms, c_discrepancy_table, certification_grid, dih_4f3_variants, dih_polynomial,
    f5_certificate, golden_g_check, klein_covering, klein_psi, klein_theta, semi_invariant_check,
    semi_invariants, theta34, theta34_hypergeometric, theta56, theta56_hypergeometric,
)

x = Poly.gen("x")
t = Poly.gen("t")

small_tuples = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(2, 4), st.integers(1, 14)) \
    .filter(lambda p: p[0] + p[1] <= 2 and p[3] <= 3 * p[2] + 2 and p[3] % p[2])


def test_worked_example():
    cov = klein_covering(1, 0, 2, 1)
    assert cov.degree == 3 and cov.certified
    assert cov.theta1 == Q(4, 9) - x / 3
    assert cov.theta2 == Poly.const(Q(1, 9))
    assert cov.psi == Q(1, 4) - x / 16
    assert cov.C == Q(256, 81)


def test_closed_form_c_is_four_to_n_times_exact():
    cov = klein_covering(1, 0, 2, 1)
    assert c_closed_forms(1, 0, 2, 1)["F3"] == 4 * cov.C


def test_psi_forms_agree():
    assert klein_psi(2, 1, 3, 2, "KdF122") == klein_psi(2, 1, 3, 2, "KdF211")


@pytest.mark.parametrize("key", sorted(GOLDEN_G))
def test_golden_g_table(key):
    # The table reads G_{4,0} and G_{3,1} at x^2 homogeneously in r = n/m.
    assert golden_g_check(*key)


@pytest.mark.parametrize("m", range(2, 9))
def test_theta34(m):
    t3, t4 = theta34(m)
    assert (t3, t4) == theta34_hypergeometric(m)
    # squaring out the half-integer power gives a polynomial identity
    assert t3 * t3 - x ** 3 * t4 * t4 == (1 - x) * (1 - x / (m * m)) ** m


@pytest.mark.parametrize("m", [3, 5, 7, 9])
def test_theta56(m):
    assert theta56(m) == theta56_hypergeometric(m)


def test_f5_branching():
    rep = f5_certificate()
    assert (rep.fiber0, rep.fiber1, rep.fiber_inf, rep.hurwitz) == ([1, 2, 2], [1, 2, 2], [5], 8)
    assert rep.passed


def test_branching_detects_wrong_pattern():
    rep = branching_certificate(x ** 2, (x - 1) ** 2 + x, {"0": [1, 1]})
    assert not rep.passed


def test_json_round_trip_recertifies():
    cov = klein_covering(2, 1, 3, 4)
    again = KleinCovering.from_json(cov.to_json())
    assert again.certified == cov.certified and again.C == cov.C
    assert again.to_json()["checks"][:len(again.report.checks)] == again.report.checks


def test_tampered_json_fails_certification():
    doc = klein_covering(1, 1, 3, 2).to_json()
    doc["psi"] = doc["psi"][:-1]
    assert not KleinCovering.from_json(doc).certified


def test_invalid_parameters():
    with pytest.raises((ValueError, KleinError)):
        klein_covering(1, 0, 2, 4)
    with pytest.raises((ValueError, KleinError)):
        klein_covering(-1, 0, 3, 1)


def test_dih_forms():
    assert dih_polynomial(1, 0, 2, 1, "F2") == 1 + 3 * t
    assert dih_polynomial(1, 0, 2, 1, "2F1") == 1 + 3 * t
    assert all(v == 1 + 3 * t for v in dih_4f3_variants(1, 0, 2, 1))


def test_dih_4f3_undefined_variant_is_reported():
    assert any(isinstance(v, str) and v.startswith("undefined") for v in dih_4f3_variants(1, 1, 3, 1))


def test_grid_size():
    assert len(certification_grid()) == 370


def test_discrepancy_table_rows():
    rows = c_discrepancy_table([(1, 0, 2, 1)])
    assert [r["normalization"] for r in rows] == ["F3", "F2", "W"]
    assert all(r["C_exact"] and r["ratio"] == "4" for r in rows)


def test_semi_invariants_w_sum_is_theta():
    si = semi_invariants(1, 0, 2, 1)
    t1, _ = klein_theta(1, 0, 2, 1, "W")
    s = si.w1_m + si.w2_m
    assert s.odd.is_zero() and s.even_poly() == t1


@settings(max_examples=25, deadline=None)
@given(small_tuples)
def test_grid_tuples_certify(p):
    cov = klein_covering(*p)
    assert cov.certified
    assert cov.psi.degree == p[0] + p[1]
    assert approximation_zeros(*p)


@settings(max_examples=15, deadline=None)
@given(small_tuples)
def test_semi_invariant_proportionality(p):
    assert semi_invariant_check(*p)


@settings(max_examples=15, deadline=None)
@given(small_tuples)
def test_normalizations_give_same_phi(p):
    a1, a2 = klein_theta(*p, "F3")
    for other in ("F2", "W"):
        b1, b2 = klein_theta(*p, other)
        assert (a2 * b1) ** 2 == (b2 * a1) ** 2
