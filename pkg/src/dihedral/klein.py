"""Klein pull-back coverings for algebraic dihedral equations
E(k+1/2, l+1/2, n/m).

Polynomials in ``t = sqrt(x)`` are kept as ``Poly`` objects in the variable
``t`` and split into even/odd parts when the x-polynomials are needed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial, gcd

from gmpy2 import mpq

from .algebra import (
    Poly, Q, RatFunc, Series, SqrtPoly, poly_gcd, poly_to_json, poly_from_json,
    squarefree_decomposition, q_str,
)
from .hyper import (
    EvaluationError, HyperParams, double_sum_cleared, double_sum_coefficients,
    pfq_series, pfq_terminating, pochhammer,
)

__all__ = [
    "KleinError", "BranchingReport", "KleinCovering", "g_polynomial", "g_poly_t",
    "klein_theta", "klein_psi", "c_constant", "c_closed_forms", "branching_certificate",
    "klein_covering", "semi_invariants", "dih_polynomial", "approximation_zeros",
    "theta34", "theta34_hypergeometric", "theta56", "theta56_hypergeometric",
    "GOLDEN_G", "certification_grid", "golden_g_check", "SemiInvariants",
    "semi_invariant_check", "dih_4f3_variants", "certify", "c_discrepancy_table", "f5_certificate",
]

T = Poly.gen("t")


class KleinError(ArithmeticError):
    """Internal consistency failure while building a covering."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def _check_params(k, l, m, n):
    if k < 0 or l < 0:
        raise ValueError("k and l must be nonnegative")
    if m < 2 or n < 1:
        raise ValueError("need m > 1 and n >= 1")
    if n % m == 0:
        raise ValueError("n/m is an integer: degenerate case is not supported")


def _ratio(m, n):
    return mpq(n, m)


def _split_t(p: Poly) -> tuple[Poly, Poly]:
    """Even and odd parts of a t-polynomial as x-polynomials."""
    cs = p.coeffs
    return Poly(cs[0::2], "x"), Poly(cs[1::2], "x")


# ---------------------------------------------------------------------------
# G polynomial and Theta pairs
# ---------------------------------------------------------------------------

def g_poly_t(k: int, l: int, r, form: str = "F3") -> Poly:
    """The G polynomial in ``t = sqrt(x)`` for ratio ``r = n/m``.

    ``r`` may be an exact rational or the symbol ``Poly.gen("r")``.
    F3 form: ``t^k F3(k+1, l+1; -k, -l; 1+r; (t+1)/(2t), (1+t)/2)``.
    F2 form: ``(1+t)^(k+l) F2(-r-k-l; -k, -l; -2k, -2l; 2t/(1+t), 2/(1+t))``.
    """
    out = Poly((), "t")
    one_t = 1 + T
    if form == "F3":
        tab, _ = double_sum_coefficients(HyperParams.F3(k + 1, l + 1, -k, -l, 1 + r))
        for p, row in enumerate(tab):
            for q, c in enumerate(row):
                if c != 0:
                    out = out + (c * Q(1, 2 ** (p + q))) * T ** (k - p) * one_t ** (p + q)
    elif form == "F2":
        tab, _ = double_sum_coefficients(HyperParams.F2(-r - k - l, -k, -l, -2 * k, -2 * l))
        for p, row in enumerate(tab):
            for q, c in enumerate(row):
                if c != 0:
                    out = out + (c * 2 ** (p + q)) * T ** p * one_t ** (k + l - p - q)
    else:
        raise ValueError(f"unknown G form {form!r}")
    return out


def g_polynomial(k: int, l: int, m=None, n=None, form: str = "F3",
                 domain: str = "exact") -> SqrtPoly:
    """G as an expression in sqrt(x); ``domain='symbolic-ratio'`` uses r = n/m."""
    if domain == "symbolic-ratio":
        r = Poly.gen("r")
    else:
        _check_params(k, l, m, n)
        r = _ratio(m, n)
    return SqrtPoly.from_t_poly(g_poly_t(k, l, r, form))


# Printed small cases, normalized to constant term 1, in r = n/m.  The
# x^2 coefficients of G_{4,0} and G_{3,1} are read homogeneously in (n, m).
def _golden():
    r = Poly.gen("r")
    one = Poly.const(1, "r")
    return {
        (2, 0): [one, -r, (r * r - 1) / 3],
        (3, 0): [one, -r, (2 * r * r - 3) / 5, -r * (r * r - 4) / 15],
        (4, 0): [one, -r, 3 * (r * r - 2) / 7, -r * (2 * r * r - 11) / 21,
                 (r * r - 1) * (r * r - 9) / 105],
        (1, 1): [one, -r, one],
        (2, 1): [one, -r, r * r / 3, -r / 3],
        (3, 1): [one, -r, 2 * (r * r - 1) / 5, -r * (r * r - 1) / 15, (r * r - 1) / 15],
        (2, 2): [one, -r, (r * r + 2) / 3, -r, one],
    }


GOLDEN_G = _golden()


def golden_g_check(k: int, l: int) -> bool:
    """Symbolic G divided by G(0) against the printed table."""
    g = g_poly_t(k, l, Poly.gen("r"))
    g0 = g.coeff(0)
    ours = [RatFunc(c) / g0 if isinstance(c, Poly) else c / g0 for c in g.coeffs]
    want = GOLDEN_G[(k, l)]
    return len(ours) == len(want) and all(a == b for a, b in zip(ours, want))


def _theta_from_t(big: Poly, k: int) -> tuple[Poly, Poly]:
    even, odd = _split_t(big)
    for i in range(k):
        if odd.coeff(i) != 0:
            raise KleinError(f"odd part not divisible by x^{k}: coefficient of x^{i} is {odd.coeff(i)}")
    return even, Poly(odd.coeffs[k:], "x")


def _w_constant(k, l, r):
    lam = -r
    return ((-1) ** (k + l) * pochhammer(1 - lam, k + l)
            / (2 ** (k + l) * pochhammer((1 + lam - k - l) / 2, l)))


def klein_theta(k: int, l: int, m: int, n: int, normalization: str = "F3") -> tuple[Poly, Poly]:
    """Theta1, Theta2 with ``(1+t)^n G^m = Theta1(x) + x^(k+1/2) Theta2(x)``.

    The W normalization is ``W1^m + W2^m`` and ``(W1^m - W2^m) / x^(k+1/2)``.
    """
    _check_params(k, l, m, n)
    r = _ratio(m, n)
    norm = normalization.upper()
    if norm in ("F3", "W"):
        g = g_poly_t(k, l, r, "F3")
    elif norm == "F2":
        g = g_poly_t(k, l, r, "F2")
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    big = (1 + T) ** n * g ** m
    t1, t2 = _theta_from_t(big, k)
    if norm == "W":
        c = 2 * _w_constant(k, l, r) ** m
        t1, t2 = t1 * c, t2 * c
    return t1, t2


def approximation_zeros(k: int, l: int, m: int, n: int) -> bool:
    """Vanishing t-coefficients of ``(1+t)^n G^m`` near x = 0 and x = infinity."""
    big = (1 + T) ** n * g_poly_t(k, l, _ratio(m, n)) ** m
    top = n + m * (k + l)
    if big.degree > top:
        return False
    low = all(big.coeff(j) == 0 for j in range(1, 2 * k, 2))
    high = all(big.coeff(top - j) == 0 for j in range(1, 2 * l, 2))
    return low and high


# ---------------------------------------------------------------------------
# Psi and the constant C
# ---------------------------------------------------------------------------

def klein_psi(k: int, l: int, m: int, n: int, form: str = "KdF122") -> Poly:
    """Psi from either Kampe de Feriet form, denominators cleared."""
    _check_params(k, l, m, n)
    r = _ratio(m, n)
    x = Poly.gen("x")
    one = Poly.const(1, "x")
    ratio_l = pochhammer((1 - k - l) / Q(2) - r / 2, l) / pochhammer((1 + k - l) / Q(2) - r / 2, l)
    f = form.lower()
    if f == "kdf122":
        pre = ((-1) ** l * pochhammer(1 + r, k + l) * pochhammer(1 - r, k + l) * ratio_l
               / 4 ** (k + l))
        params = HyperParams.KdF122(Q(1, 2), k + 1, l + 1, -k, -l, 1 + r, 1 - r)
        # x^k (1-1/x)^p (1-x)^q = x^(k-p) (x-1)^p (1-x)^q
        val, denom, kk, ll = double_sum_cleared(params, (x - 1, x), (1 - x, one))
        psi = val * (pre / denom)
        psi = psi * x ** (k - kk) if k >= kk else psi
    elif f == "kdf211":
        pre = (pochhammer(Q(1, 2), k + l) * pochhammer(Q(1, 2), k) * pochhammer(Q(1, 2), l)
               * ratio_l)
        params = HyperParams.KdF211(r - k - l, -r - k - l, -k, -l, Q(1, 2) - k - l, -2 * k, -2 * l)
        val, denom, kk, ll = double_sum_cleared(params, (x, x - 1), (one, 1 - x))
        # val = (x-1)^K (1-x)^L F; the prefactor wants (1-x)^(k+l) F.
        psi = val * ((-1) ** kk * pre / denom)
        psi = psi * (1 - x) ** (k + l - kk - ll)
    else:
        raise ValueError(f"unknown Psi form {form!r}")
    if not isinstance(psi, Poly):
        psi = Poly.const(psi)
    if psi.degree != k + l:
        raise KleinError(f"Psi has degree {psi.degree}, expected {k + l}")
    return psi


def c_constant(k: int, l: int, m: int, n: int, theta1: Poly, theta2: Poly, psi: Poly):
    """C from ``Theta1^2 - x^(2k+1) Theta2^2 = C (1-x)^n Psi^m`` by exact division."""
    x = Poly.gen("x")
    lhs = theta1 ** 2 - x ** (2 * k + 1) * theta2 ** 2
    rhs = (1 - x) ** n * psi ** m
    if rhs.is_zero():
        raise KleinError("Psi^m vanishes")
    quo, rem = lhs.divmod(rhs)
    if rem or quo.degree != 0:
        raise KleinError("central identity quotient is not a nonzero constant")
    return quo.coeff(0)


def c_closed_forms(k: int, l: int, m: int, n: int) -> dict:
    """Printed closed forms of C for the three normalizations (advisory)."""
    r = _ratio(m, n)
    return {
        "F3": Q(4) ** (n + m * (k + l)) / pochhammer(1 + r, k + l) ** (2 * m),
        "F2": Q(4) ** n / (pochhammer(Q(1, 2), k) ** (2 * m) * pochhammer(Q(1, 2), l) ** (2 * m)),
        "W": Q(4) ** (n + 1) / pochhammer((1 - k - l) / Q(2) - r / 2, l) ** (2 * m),
    }


# ---------------------------------------------------------------------------
# Branching certification
# ---------------------------------------------------------------------------

@dataclass
class BranchingReport:
    degree: int
    fiber0: list
    fiber1: list
    fiber_inf: list
    hurwitz: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def add(self, name, ok, detail=""):
        self.checks.append({"name": name, "pass": bool(ok), "detail": str(detail)})


def _fiber(poly: Poly, d: int) -> list:
    mult = []
    for f, e in squarefree_decomposition(poly):
        mult.extend([e] * f.degree)
    if poly.degree < d:
        mult.append(d - poly.degree)
    return sorted(mult)


def branching_certificate(numer: Poly, denom: Poly, expected=None) -> BranchingReport:
    """Fibres of ``numer/denom`` over 0, 1 and infinity with the Hurwitz count.

    ``expected`` may map ``"0"``, ``"1"``, ``"inf"`` to multiplicity lists.
    """
    d = max(numer.degree, denom.degree)
    f0 = _fiber(numer, d)
    f1 = _fiber(numer - denom, d)
    finf = _fiber(denom, d)
    hurwitz = sum(e - 1 for e in f0 + f1 + finf)
    rep = BranchingReport(d, f0, f1, finf, hurwitz)
    g = poly_gcd(numer, denom)
    rep.add("coprime numerator and denominator", g.degree == 0, g)
    rep.add("fibre sums equal degree", sum(f0) == sum(f1) == sum(finf) == d, (sum(f0), sum(f1), sum(finf)))
    rep.add("Hurwitz count 2d-2", hurwitz == 2 * d - 2, f"{hurwitz} vs {2 * d - 2}")
    if expected:
        for key, got in (("0", f0), ("1", f1), ("inf", finf)):
            if key in expected:
                want = sorted(expected[key])
                rep.add(f"fibre over {key}", got == want, f"{got} vs {want}")
    return rep


def _expected_pattern(k, l, m, n):
    d = (k + l) * m + n
    over1 = [n] + [m] * (k + l)
    if d % 2:
        alpha, beta = (d - 1) // 2 - l, (d - 1) // 2 - k
        return {"0": [2 * k + 1] + [2] * beta, "1": over1, "inf": [2 * l + 1] + [2] * alpha}
    alpha, beta = d // 2, d // 2 - k - l - 1
    return {"0": [2 * k + 1, 2 * l + 1] + [2] * beta, "1": over1, "inf": [2] * alpha}


def _theta_degrees(k, l, m, n):
    d = (k + l) * m + n
    if d % 2:
        return (d - 1) // 2 - l, (d - 1) // 2 - k
    return d // 2, d // 2 - k - l - 1


# ---------------------------------------------------------------------------
# Coverings
# ---------------------------------------------------------------------------

@dataclass
class KleinCovering:
    k: int
    l: int
    m: int
    n: int
    normalization: str
    theta1: Poly
    theta2: Poly
    psi: Poly
    C: object
    report: BranchingReport

    @property
    def degree(self) -> int:
        return (self.k + self.l) * self.m + self.n

    @property
    def certified(self) -> bool:
        return self.report.passed

    def phi(self) -> RatFunc:
        x = Poly.gen("x")
        return RatFunc(x ** (2 * self.k + 1) * self.theta2 ** 2, self.theta1 ** 2)

    def to_json(self) -> dict:
        return {
            "k": self.k, "l": self.l, "m": self.m, "n": self.n,
            "degree": self.degree,
            "normalization": self.normalization,
            "theta1": poly_to_json(self.theta1),
            "theta2": poly_to_json(self.theta2),
            "psi": poly_to_json(self.psi),
            "C": q_str(self.C),
            "certified": self.certified,
            "checks": self.report.checks,
        }

    @classmethod
    def from_json(cls, doc: dict) -> KleinCovering:
        """Rebuild from JSON and re-run the certification checks."""
        t1, t2, psi = (poly_from_json(doc[key]) for key in ("theta1", "theta2", "psi"))
        return certify(doc["k"], doc["l"], doc["m"], doc["n"], doc["normalization"],
                       t1, t2, psi, mpq(doc["C"]))


def certify(k, l, m, n, normalization, theta1, theta2, psi, C=None) -> KleinCovering:
    """Run all structural checks on given Theta/Psi data."""
    x = Poly.gen("x")
    d = (k + l) * m + n
    numer = x ** (2 * k + 1) * theta2 ** 2
    denom = theta1 ** 2
    rep = branching_certificate(numer, denom, _expected_pattern(k, l, m, n))
    rep.add("map degree", rep.degree == d, f"{rep.degree} vs {d}")
    alpha, beta = _theta_degrees(k, l, m, n)
    rep.add("Theta degrees", (theta1.degree, theta2.degree) == (alpha, beta),
            f"{(theta1.degree, theta2.degree)} vs {(alpha, beta)}")
    rep.add("Theta1(0) nonzero", theta1.coeff(0) != 0, theta1.coeff(0))
    rep.add("deg Psi = k+l", psi.degree == k + l, psi.degree)
    try:
        c_div = c_constant(k, l, m, n, theta1, theta2, psi)
        ok = C is None or c_div == C
        rep.add("central identity with exact-division C", ok, q_str(c_div))
        C = c_div
    except KleinError as exc:
        rep.add("central identity with exact-division C", False, exc)
    for name, p in (("Theta1", theta1), ("Theta2", theta2), ("Psi", psi)):
        if p.degree > 0:
            sq = poly_gcd(p, p.diff()).degree == 0
        else:
            sq = not p.is_zero()
        rep.add(f"{name} squarefree", sq)
    pairs = (("Theta1", theta1, "Theta2", theta2), ("Theta1", theta1, "Psi", psi),
             ("Theta2", theta2, "Psi", psi), ("x", x, "Theta1", theta1),
             ("x", x, "Psi", psi), ("1-x", 1 - x, "Psi", psi))
    for na, a, nb, b in pairs:
        rep.add(f"{na} coprime to {nb}", poly_gcd(a, b).degree == 0)
    if gcd(n, m) > 1:
        rep.add("smaller dihedral group (gcd(n, m) > 1)", True, gcd(n, m))
    return KleinCovering(k, l, m, n, normalization, theta1, theta2, psi, C, rep)


def klein_covering(k: int, l: int, m: int, n: int, normalization: str = "F3",
                   strict: bool = True) -> KleinCovering:
    """Build and certify the covering; raises ``KleinError`` on failure if strict."""
    _check_params(k, l, m, n)
    norm = normalization.upper()
    t1, t2 = klein_theta(k, l, m, n, norm)
    psi = klein_psi(k, l, m, n, "KdF122")
    cov = certify(k, l, m, n, norm, t1, t2, psi)
    rep = cov.report
    psi2 = klein_psi(k, l, m, n, "KdF211")
    rep.add("Psi KdF122 = KdF211", psi == psi2)
    others = [nm for nm in ("F3", "F2", "W") if nm != norm]
    for other in others:
        a1, a2 = klein_theta(k, l, m, n, other)
        rep.add(f"Phi agrees with {other} normalization",
                (t2 * a1) ** 2 == (a2 * t1) ** 2)
    rep.add("approximation zeros", approximation_zeros(k, l, m, n))
    if strict and not cov.certified:
        failed = [c["name"] for c in rep.checks if not c["pass"]]
        raise KleinError(f"covering ({k},{l},{m},{n}) failed: {failed}", rep)
    return cov


def certification_grid(max_kl: int = 3, ms=range(2, 6)):
    """All (k, l, m, n) with k+l <= max_kl, m in ms, 1 <= n <= 3m+2, m not dividing n."""
    out = []
    for s in range(max_kl + 1):
        for k in range(s + 1):
            l = s - k
            for m in ms:
                for n in range(1, 3 * m + 3):
                    if n % m:
                        out.append((k, l, m, n))
    return out


# ---------------------------------------------------------------------------
# Semi-invariants
# ---------------------------------------------------------------------------

@dataclass
class SemiInvariants:
    """``W1 = (1+sqrt x)^(n/m) core1`` and its conjugate ``W2``.

    The fractional factor is kept implicit; ``w1_m`` and ``w2_m`` are the
    (polynomial) m-th powers.
    """

    core1: SqrtPoly
    core2: SqrtPoly
    w1_m: SqrtPoly
    w2_m: SqrtPoly


def semi_invariants(k: int, l: int, m: int, n: int) -> SemiInvariants:
    _check_params(k, l, m, n)
    r = _ratio(m, n)
    lam = -r
    core_f3 = g_poly_t(k, l, r, "F3") * _w_constant(k, l, r)
    c2 = pochhammer(Q(1, 2), k) * pochhammer(Q(1, 2), l) / pochhammer((1 + lam - k - l) / 2, l)
    core_f2 = g_poly_t(k, l, r, "F2") * c2
    if core_f3 != core_f2:
        raise KleinError("F3 and F2 forms of the semi-invariant disagree")
    core1 = SqrtPoly.from_t_poly(core_f3)
    w1m = SqrtPoly.from_t_poly((1 + T) ** n * core_f3 ** m)
    return SemiInvariants(core1, core1.conj(), w1m, w1m.conj())


def semi_invariant_check(k: int, l: int, m: int, n: int) -> bool:
    """``W1^m + W2^m`` and ``(W1^m - W2^m)/x^(k+1/2)`` proportional to Theta1, Theta2."""
    si = semi_invariants(k, l, m, n)
    t1, t2 = klein_theta(k, l, m, n, "F3")
    s = si.w1_m + si.w2_m
    dlt = si.w1_m - si.w2_m
    if not s.odd.is_zero() or not dlt.even.is_zero():
        return False
    p1 = s.even_poly()
    low, pt = dlt.to_t_laurent()
    if low < 2 * k + 1:
        return False
    p2 = SqrtPoly.from_t_laurent(pt, low - (2 * k + 1)).even_poly()
    return p1 * t1.lc == t1 * p1.lc and p2 * t2.lc == t2 * p2.lc and p1.lc * t2.lc == p2.lc * t1.lc


# ---------------------------------------------------------------------------
# Small explicit cases
# ---------------------------------------------------------------------------

def theta34(m: int) -> tuple[Poly, Poly]:
    """``(1+t)(1-t/m)^m = theta3(x) + x^(3/2) theta4(x)``."""
    return _theta_from_t((1 + T) * (1 - T / m) ** m, 1)


def theta34_hypergeometric(m: int) -> tuple[Poly, Poly]:
    x = Poly.gen("x")
    z = x / (m * m)
    t3 = pfq_terminating([Q(-m, 2), Q(-(m + 1), 2)], [Q(-1, 2)], z)
    t4 = Q(m * m - 1, 3 * m * m) * pfq_terminating([Q(-(m - 2), 2), Q(-(m - 3), 2)], [Q(5, 2)], z)
    return _as_poly(t3), _as_poly(t4)


def theta56(m: int) -> tuple[Poly, Poly]:
    """``(1+t)^2 (1-2t/m)^m = theta5(x) + x^(3/2) theta6(x)``."""
    return _theta_from_t((1 + T) ** 2 * (1 - 2 * T / m) ** m, 1)


def theta56_hypergeometric(m: int) -> tuple[Poly, Poly]:
    x = Poly.gen("x")
    z = 4 * x / (m * m)
    t5 = pfq_terminating([Q(-(m + 1), 2), Q(-(m + 2), 2), Q(-m, m + 2)],
                         [Q(-1, 2), Q(-2 * (m + 1), m + 2)], z)
    t6 = Q(2 * (m * m - 4), 3 * m * m) * pfq_terminating(
        [Q(-(m - 1), 2), Q(-(m - 2), 2), Q(m + 6, 2 * (m + 2))],
        [Q(5, 2), Q(-(m - 2), 2 * (m + 2))], z)
    return _as_poly(t5), _as_poly(t6)


def _as_poly(v, var="x") -> Poly:
    return v if isinstance(v, Poly) else Poly.const(v, var)


# ---------------------------------------------------------------------------
# The Dih polynomial
# ---------------------------------------------------------------------------

def dih_polynomial(k: int, l: int, m: int, n: int, form: str = "F2") -> Poly:
    """Dih(t) from the F2 form, the 2F1 form or the quoted 4F3 double sums."""
    _check_params(k, l, m, n)
    f = form.lower()
    if f == "f2":
        return _dih_f2(k, l, m, n)
    if f == "2f1":
        return _dih_2f1(k, l, m, n)
    if f == "4f3":
        for v in dih_4f3_variants(k, l, m, n):
            if isinstance(v, Poly):
                return v
        raise KleinError("both quoted 4F3 expressions are undefined here")
    raise ValueError(f"unknown Dih form {form!r}")


def _dih_f2(k, l, m, n) -> Poly:
    r = _ratio(m, n)
    pre = (pochhammer(r / 2 + Q(1 - k - l, 2), k) * factorial(2 * k) * factorial(2 * l)
           / (pochhammer(r / 2 + Q(1 - k + l, 2), k) * pochhammer(1 - r, k + l)
              * factorial(k) * factorial(l)))
    val = _double_at_polys(HyperParams.F2(-r - k - l, -k, -l, -2 * k, -2 * l), 1 - T, 1 + T)
    return _as_poly(val * pre, "t")


def _double_at_polys(params, xv, yv):
    tab, _ = double_sum_coefficients(params)
    out = Poly((), "t")
    for p, row in enumerate(tab):
        for q, c in enumerate(row):
            if c != 0:
                out = out + c * xv ** p * yv ** q
    return out


def _dih_2f1(k, l, m, n, extra: int = 6) -> Poly:
    """Series expansion of the 2F1 form, checked to terminate at degree k+l."""
    r = _ratio(m, n)
    order = 2 * (k + l) + extra
    one_t = Series([1, 1], order, "t")
    arg = Series([0, 4], order, "t") * one_t ** -2
    f = pfq_series([-r / 2 - Q(k + l, 2), -r / 2 + Q(1 - k + l, 2)], [1 - r], order, "t")
    s = one_t ** (r + k + l) * f.compose(arg)
    tail = [c for c in s.coeffs[k + l + 1:] if c != 0]
    if tail:
        raise KleinError("2F1 form of Dih does not terminate at degree k+l")
    return Poly(s.coeffs[:k + l + 1], "t")


def dih_4f3_variants(k: int, l: int, m: int, n: int) -> list:
    """Both quoted 4F3 double-sum expressions; an entry is a ``Poly`` or an error string."""
    lam = -_ratio(m, n)
    h = Q(1, 2)
    e = (lam - k - l) / 2
    first = (
        lambda p: pochhammer(e, p) * pochhammer(Q(1 - k - l, 2), p)
        / (pochhammer((1 + lam) / 2, p) * factorial(p)),
        lambda p: ([-p, p + e, Q(1 + k - l, 2), Q(1 - k + l, 2)], [h, 1 + lam / 2, Q(1 - k - l, 2)]),
        lambda p: pochhammer(e, p + 1) * pochhammer(Q(1 - k - l, 2), p)
        / (pochhammer((1 + lam) / 2, p + 1) * factorial(p)),
        lambda p: ([-p, p + 1 + e, Q(1 + k - l, 2), Q(1 - k + l, 2)], [3 * h, 1 + lam / 2, Q(1 - k - l, 2)]),
    )
    second = (
        lambda p: pochhammer(e, p) * pochhammer(Q(-(k + l), 2), p)
        / (pochhammer(1 + lam / 2, p) * factorial(p)),
        lambda p: ([-p, p + e, Q(k - l, 2), Q(l - k, 2)], [h, (1 + lam) / 2, Q(-(k + l), 2)]),
        lambda p: pochhammer(e, p + 1) * pochhammer(1 - Q(k + l, 2), p)
        / ((1 + lam) / 2 * pochhammer(1 + lam / 2, p) * factorial(p)),
        lambda p: ([-p, p + 1 + e, 1 + Q(k - l, 2), 1 + Q(l - k, 2)], [3 * h, (3 + lam) / 2, 1 - Q(k + l, 2)]),
    )
    out = []
    for even_c, even_p, odd_c, odd_p in (first, second):
        try:
            acc = Poly((), "t")
            for p in range((k + l) // 2 + 1):
                up, lo = even_p(p)
                acc = acc + even_c(p) * pfq_terminating(up, lo, 1) * T ** (2 * p)
                up, lo = odd_p(p)
                acc = acc + (l - k) * odd_c(p) * pfq_terminating(up, lo, 1) * T ** (2 * p + 1)
            out.append(acc)
        except (EvaluationError, ZeroDivisionError) as exc:
            out.append(f"undefined: {exc}")
    return out


def c_discrepancy_table(grid=None) -> list[dict]:
    """Exact-division C against the printed closed forms, one row per tuple
    and normalization. Closed-form mismatches are reported, never raised."""
    rows = []
    for k, l, m, n in (grid if grid is not None else certification_grid()):
        forms = c_closed_forms(k, l, m, n)
        for norm in ("F3", "F2", "W"):
            cov = klein_covering(k, l, m, n, norm, strict=False)
            exact = cov.C
            closed = forms[norm]
            rows.append({
                "k": k, "l": l, "m": m, "n": n, "normalization": norm,
                "C_exact": q_str(exact), "C_closed_form": q_str(closed),
                "match": closed == exact,
                "ratio": q_str(closed / exact) if exact else None,
            })
    return rows


def f5_certificate() -> BranchingReport:
    """Branching of ``z (z^2 + 10 z + 5)^2 / (z - 1)^5``."""
    z = Poly.gen("x")
    return branching_certificate(z * (z * z + 10 * z + 5) ** 2, (z - 1) ** 5,
                                 {"0": [1, 2, 2], "1": [1, 2, 2], "inf": [5]})
