"""Registry of hypergeometric identities and their exact verification.

Every entry builds both sides of one identity and compares them either as
exact polynomials or as truncated power series with coefficients in Q[a]
(or Q[s][A] for the two-parameter Clausen identities). Symbolic lower
parameters are cleared (see ``hyper``) and the two sides compared by
cross-multiplication, so no rational-function coefficients are needed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Callable

from gmpy2 import mpq

from .algebra import Poly, Q, RatFunc, Series, moebius_involution, series_compose
from .hyper import (
    HyperParams, double_sum_cleared, pfq_coefficients, pfq_series, pfq_terminating,
    pochhammer, terminating_double_sum,
)

__all__ = [
    "IdentityEntry", "VerificationReport", "identity_registry", "get_entry",
    "verify_identity", "dihedral_lhs", "dihedral_rhs", "DEFAULT_ORDER",
]

DEFAULT_ORDER = 24

A = Poly.gen("a")


# ---------------------------------------------------------------------------
# Plumbing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityEntry:
    id: str
    anchor: str
    params: dict
    mode: str
    default_order: int
    build: Callable = field(repr=False, compare=False)
    note: str = ""


@dataclass
class VerificationReport:
    id: str
    params: dict
    order: int | None
    mode: str
    outcome: str
    mismatch: dict | None = None
    note: str = ""

    @property
    def verified(self) -> bool:
        return self.outcome == "verified"

    def summary(self) -> str:
        if self.mode == "exact-polynomial":
            head = f"{self.outcome} (exact)"
        else:
            head = f"{self.outcome} (order {self.order})"
        if self.mismatch:
            head += f" first mismatch at index {self.mismatch['index']}"
        return head

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "params": {k: str(v) for k, v in sorted(self.params.items())},
            "order": self.order,
            "mode": self.mode,
            "outcome": self.outcome,
            "mismatch": self.mismatch,
            "note": self.note,
        }


class Frac:
    """An unreduced quotient ``value / denom`` compared by cross-multiplication."""

    __slots__ = ("value", "denom")

    def __init__(self, value, denom=1):
        self.value, self.denom = value, denom


def _normalize(lhs, rhs):
    if isinstance(lhs, Frac) or isinstance(rhs, Frac):
        lf = lhs if isinstance(lhs, Frac) else Frac(lhs)
        rf = rhs if isinstance(rhs, Frac) else Frac(rhs)
        return lf.value * rf.denom, rf.value * lf.denom
    return lhs, rhs


def _first_mismatch(lhs, rhs, order):
    """Index of the first differing coefficient, ``None`` when equal."""
    lhs, rhs = _normalize(lhs, rhs)
    if isinstance(lhs, Series) or isinstance(rhs, Series):
        if not isinstance(lhs, Series):
            lhs = Series.from_poly(_as_poly(lhs, rhs.var), rhs.order, rhs.var)
        if not isinstance(rhs, Series):
            rhs = Series.from_poly(_as_poly(rhs, lhs.var), lhs.order, lhs.var)
        n = min(lhs.order, rhs.order)
        if order is not None and n < order:
            return -1, None, None
        for i in range(n if order is None else order):
            if lhs.coeffs[i] != rhs.coeffs[i]:
                return i, lhs.coeffs[i], rhs.coeffs[i]
        return None
    if isinstance(lhs, (list, tuple)):
        for i, (x, y) in enumerate(zip(lhs, rhs)):
            if x != y:
                return i, x, y
        if len(lhs) != len(rhs):
            return min(len(lhs), len(rhs)), None, None
        return None
    lp, rp = _as_poly(lhs), _as_poly(rhs)
    if lp == rp:
        return None
    for i in range(max(len(lp.coeffs), len(rp.coeffs))):
        if lp.coeff(i) != rp.coeff(i):
            return i, lp.coeff(i), rp.coeff(i)
    return 0, lhs, rhs


def _as_poly(v, var="x"):
    if isinstance(v, Poly) and v.var not in ("a", "s", "A", "r"):
        return v
    if isinstance(v, RatFunc) and v.var not in ("a", "s", "A", "r"):
        return v.num * v.den.lc ** -1 if v.den.degree == 0 else v
    return Poly.const(v, var)


def _hyp(uppers, lowers, arg: Series, clear=False):
    """pFq composed with a series argument of positive valuation."""
    v = arg.valuation()
    if v == 0:
        raise ValueError("argument must vanish at the expansion point")
    need = -(-arg.order // v)
    if clear:
        s, d = pfq_series(uppers, lowers, need, arg.var, clear=True)
        return Frac(series_compose(s, arg), d)
    return series_compose(pfq_series(uppers, lowers, need, arg.var), arg)


def _frac_mul(*items):
    val, den = mpq(1), mpq(1)
    for it in items:
        if isinstance(it, Frac):
            val, den = val * it.value, den * it.denom
        else:
            val = val * it
    return Frac(val, den)


def _geom(order, var, c=1):
    """``1/(1 - c*var)``."""
    return Series([Q(c) ** j for j in range(order)], order, var)


# ---------------------------------------------------------------------------
# Section 2: fractional-linear, dihedral and reversal identities
# ---------------------------------------------------------------------------

def _euler(params, order):
    Aa, B, C = params["A"], params["B"], params["C"]
    z = Series.gen(order, "z")
    lhs = _hyp([Aa, B], [C], z)
    rhs = Series([1, -1], order, "z") ** (C - Aa - B) * _hyp([C - Aa, C - B], [C], z)
    return lhs, rhs


def _pfaff(params, order):
    Aa, B, C = params["A"], params["B"], params["C"]
    z = Series.gen(order, "z")
    lhs = _hyp([Aa, B], [C], z)
    arg = -z * _geom(order, "z")          # z/(z-1)
    rhs = Series([1, -1], order, "z") ** (-Aa) * _hyp([Aa, C - B], [C], arg)
    return lhs, rhs


def _f2_series(a, k, l, t: Series, sign: int):
    """``(1 -/+ t)^(-a)/2 * F2(a; -k,-l; -2k,-2l; ...)`` with the two argument pairs.

    ``sign=+1``: arguments ``2t/(1+t), 2/(1+t)`` and factor ``(1+t)^(-a)``.
    ``sign=-1``: arguments ``2t/(t-1), 2/(1-t)`` and factor ``(1-t)^(-a)``.
    """
    order = t.order
    base = Series([1, sign], order, t.var)          # 1 + sign*t
    inv = base.inverse()
    x = Series([0, 2 * sign], order, t.var) * inv   # 2t/(1+t) or 2t/(t-1)
    y = inv * 2
    f2 = terminating_double_sum(HyperParams.F2(a, -k, -l, -2 * k, -2 * l), x, y)
    return base ** (-a) * f2 * Q(1, 2)


def dihedral_lhs(variant: str, k: int, l: int, order: int, a=A):
    """Left-hand sides of the dihedral expressions as series.

    ``F2-even`` and ``F2-odd`` are series in ``t = sqrt(z)``. ``F3-form`` is
    expanded at ``z = 1`` in ``w`` with ``z = (1-w)^2`` and returned with
    rational-function coefficients in ``a``.
    """
    if variant == "F2-even":
        t2 = Series([0, 0, 1], order, "t")
        pre = pochhammer((a + 1) / 2, l) / pochhammer(Q(1, 2), l)
        return _hyp([a / 2, (a + 1) / 2 + l], [Q(1, 2) - k], t2) * pre
    if variant == "F2-odd":
        inner_order = max(order - (2 * k + 1), 1)
        t2 = Series([0, 0, 1], inner_order, "t")
        pre = (pochhammer((a + 1) / 2, k) * pochhammer(a / 2, k + l + 1)
               / (pochhammer(Q(1, 2), k) * pochhammer(Q(1, 2), k + 1) * pochhammer(Q(1, 2), l))
               * (-1) ** k)
        f = _hyp([(a + 1) / 2 + k, a / 2 + k + l + 1], [Q(3, 2) + k], t2) * pre
        return f.shift(2 * k + 1).truncate(order) if f.order + 2 * k + 1 >= order else f.shift(2 * k + 1)
    if variant == "F3-form":
        lhs = _diha_sides(a, k, l, order)[0]
        return lhs.value.map_coeffs(lambda c: RatFunc(c, lhs.denom) if isinstance(c, Poly) else c / lhs.denom)
    raise ValueError(f"unknown variant {variant!r}")


def dihedral_rhs(variant: str, k: int, l: int, order: int, a=A):
    if variant in ("F2-even", "F2-odd"):
        t = Series.gen(order, "t")
        plus = _f2_series(a, k, l, t, +1)
        minus = _f2_series(a, k, l, t, -1)
        return plus + minus if variant == "F2-even" else minus - plus
    if variant == "F3-form":
        rhs = _diha_sides(a, k, l, order)[1]
        return rhs.value.map_coeffs(lambda c: RatFunc(c, rhs.denom) if isinstance(c, Poly) else c / rhs.denom)
    raise ValueError(f"unknown variant {variant!r}")


def _diha_sides(a, k, l, order):
    """Both sides at z = 1 with ``z = (1-w)^2``, ``sqrt(z) = 1-w``."""
    w = Series.gen(order, "w")
    u = Series([0, 2, -1], order, "w")                       # 1 - z
    lhs = _hyp([a / 2, (a + 1) / 2 + l], [a + k + l + 1], u, clear=True)
    one_m_w = Series([1, -1], order, "w")
    X = w * one_m_w.inverse() * Q(-1, 2)                    # (sqrt z - 1)/(2 sqrt z)
    Y = w * Q(1, 2)                                         # (1 - sqrt z)/2
    f3, d = terminating_double_sum(HyperParams.F3(k + 1, l + 1, -k, -l, a + k + l + 1), X, Y, clear=True)
    pref = one_m_w ** k * Series([1, Q(-1, 2)], order, "w") ** (-a - k - l)
    return lhs, Frac(pref * f3, d)


def _diha(params, order):
    return _diha_sides(A, params["k"], params["l"], order)


def _dih12(params, order):
    k, l = params["k"], params["l"]
    return dihedral_lhs("F2-even", k, l, order), dihedral_rhs("F2-even", k, l, order)


def _dih32(params, order):
    k, l = params["k"], params["l"]
    return dihedral_lhs("F2-odd", k, l, order), dihedral_rhs("F2-odd", k, l, order)


def _dihedr2(params, order):
    t2 = Series([0, 0, 1], order, "t")
    lhs = _hyp([A / 2, (A + 1) / 2], [Q(1, 2)], t2)
    rhs = (Series([1, -1], order, "t") ** (-A) + Series([1, 1], order, "t") ** (-A)) * Q(1, 2)
    return lhs, rhs


def _quadrkk(params, order):
    k = params["k"]
    z = Series.gen(order, "z")
    lhs = _hyp([A, A + k + Q(1, 2)], [Q(1, 2) - k], z)
    one_p = Series([1, 1], order, "z")
    arg = z * 4 * one_p ** -2
    rhs = one_p ** (-A) * _hyp([A / 2, (A + 1) / 2], [Q(1, 2) - k], arg)
    return lhs, rhs


def _grid_points(count, offset):
    return [Q(2 * i + offset, 3) for i in range(1, count + 1)]


def _r2f3(params, order):
    """Compare at a (k+2) x (l+2) grid: both sides have bidegree at most (k, l)."""
    k, l = params["k"], params["l"]
    pre = factorial(k) * factorial(l) * pochhammer(A, k + l) / (factorial(2 * k) * factorial(2 * l))
    f2 = HyperParams.F2(A, -k, -l, -2 * k, -2 * l)
    f3 = HyperParams.F3(k + 1, l + 1, -k, -l, 1 - A - k - l)
    lhs, rhs = [], []
    for x in _grid_points(k + 2, 1):
        for y in _grid_points(l + 2, 2):
            lv = terminating_double_sum(f2, x, y)
            rv, d = terminating_double_sum(f3, 1 / x, 1 / y, clear=True)
            lhs.append(Frac(lv))
            rhs.append(Frac(pre * x ** k * y ** l * rv, d))
    return [_normalize(p, q)[0] for p, q in zip(lhs, rhs)], [_normalize(p, q)[1] for p, q in zip(lhs, rhs)]


def _rev32(params, order):
    """Exact polynomial identity in x with coefficients in Q[a]."""
    k, l = params["k"], params["l"]
    x = Poly.gen("x")
    one = Poly.const(1, "x")
    kdf211 = HyperParams.KdF211(A, -A - 2 * k - 2 * l, -k, -l, Q(1, 2) - k - l, -2 * k, -2 * l)
    lv, d1, _, _ = double_sum_cleared(kdf211, (x, one), (1 - x, one))
    kdf122 = HyperParams.KdF122(Q(1, 2), k + 1, l + 1, -k, -l, A + k + l + 1, 1 - A - k - l)
    # x^k (1-x)^l F(1/x, 1/(1-x)) with denominators x and 1-x cleared
    rv, d2, kk, ll = double_sum_cleared(kdf122, (one, x), (one, 1 - x))
    rv = rv * x ** (k - kk) * (1 - x) ** (l - ll)
    num = pochhammer(A, 2 * k + 2 * l + 1) / (A + k + l)
    pre = num * factorial(k) * factorial(l) / (pochhammer(Q(1, 2), k + l) * factorial(2 * k) * factorial(2 * l))
    return Frac(lv, d1), Frac(rv * pre, d2)


def _f2f2(params, order):
    """Exact in t: both sides are polynomials after clearing (1 +/- t)."""
    k, l = params["k"], params["l"]
    t = Poly.gen("t")

    def side(a, sign):
        tab = _f2_table(a, k, l)
        out = Poly((), "t")
        base = 1 + sign * t
        for p, row in enumerate(tab):
            for q, c in enumerate(row):
                if c != 0:
                    out = out + c * 2 ** (p + q) * (sign ** p) * t ** p * base ** (k + l - p - q)
        return out

    lhs = side(A, 1) * pochhammer((A + 1) / 2 + k, l)
    rhs = side(-A - 2 * k - 2 * l, -1) * ((-1) ** l * pochhammer((A + 1) / 2, l))
    return lhs, rhs


def _f2_table(a, k, l):
    from .hyper import double_sum_coefficients
    return double_sum_coefficients(HyperParams.F2(a, -k, -l, -2 * k, -2 * l))[0]


def _f3f3(params, order):
    """Exact in t after multiplying both sides by t^k."""
    k, l = params["k"], params["l"]
    t = Poly.gen("t")
    one = Poly.const(1, "t")
    lv, dl, kk, _ = double_sum_cleared(HyperParams.F3(k + 1, l + 1, -k, -l, A + k + l + 1),
                                       (t - 1, 2 * t), (1 - t, 2 * one))
    rv, dr, _, _ = double_sum_cleared(HyperParams.F3(k + 1, l + 1, -k, -l, 1 - A - k - l),
                                      (t + 1, 2 * t), (1 + t, 2 * one))
    # both values carry (2t)^k 2^l
    num = pochhammer(A, k + l) * pochhammer((A + 1) / 2 + k, l)
    den = pochhammer(1 + A + k + l, k + l) * pochhammer((A + 1) / 2, l)
    return Frac(lv * den, dl), Frac(rv * num, dr)


# ---------------------------------------------------------------------------
# Section 3: symmetric squares
# ---------------------------------------------------------------------------

S = Poly.gen("s")
AA = Poly.gen("A")


def _clausen(params, order):
    """Over Q[s][A] with s = A + B."""
    B = S - AA
    x = Series.gen(order, "x")
    f = _hyp([AA, B], [S + Q(1, 2)], x, clear=True)
    g = _hyp([2 * AA, 2 * B, S], [2 * S, S + Q(1, 2)], x, clear=True)
    return _frac_mul(f, f), g


def _geclausen(params, order):
    l = params["l"]
    B = S - AA
    x = Series.gen(order, "x")
    f = _hyp([AA, B], [S + l + Q(1, 2)], x, clear=True)
    kdf = HyperParams.KdF211(2 * AA, 2 * B, S + l, -l, S + Q(1, 2), 2 * S + 2 * l, -2 * l)
    y = Series([1, -1], order, "x")
    val, d = terminating_double_sum(kdf, x, y, clear=True)
    lhs = _frac_mul(f, f, pochhammer(AA + Q(1, 2), l) * pochhammer(B + Q(1, 2), l))
    rhs = Frac(val * (pochhammer(Q(1, 2), l) * pochhammer(S + Q(1, 2), l)), d)
    return lhs, rhs


def _symsq(params, order):
    k = params["k"]
    z = Series.gen(order, "z")
    arg = -z * _geom(order, "z")
    lhs = Series([1, -1], order, "z") ** (-A) * pfq_terminating([-k, A, -A - 2 * k], [-2 * k, Q(1, 2) - k], arg)
    f1 = _hyp([A / 2, (A + 1) / 2], [Q(1, 2) - k], z)
    f2 = _hyp([(A + 1) / 2 + k, A / 2 + k + 1], [Q(3, 2) + k], z)
    c = (Q(2) ** (4 * k) * factorial(k) ** 4 * pochhammer(A, 2 * k + 1) ** 2
         / (factorial(2 * k) ** 2 * factorial(2 * k + 1) ** 2))
    rhs = f1 * f1 - (f2 * f2).shift(2 * k + 1).truncate(order) * c
    return lhs, rhs


def _symsq2(params, order):
    l = params["l"]
    z = Series.gen(order, "z")
    inv = _geom(order, "z")                               # 1/(1-z)
    c = Q(factorial(2 * l) ** 2, 2 ** (4 * l) * factorial(l) ** 2)
    lhs = Series([1, -1], order, "z") ** (-A) * pfq_terminating([-l, A, -A - 2 * l], [-2 * l, Q(1, 2) - l], inv) * c
    f1 = _hyp([A / 2, (A + 1) / 2 + l], [Q(1, 2)], z)
    f2 = _hyp([(A + 1) / 2, A / 2 + l + 1], [Q(3, 2)], z)
    rhs = (f1 * f1 * pochhammer((A + 1) / 2, l) ** 2
           - (f2 * f2).shift(1).truncate(order) * (4 * pochhammer(A / 2, l + 1) ** 2))
    return lhs, rhs


def _genelem(params, order):
    k, l = params["k"], params["l"]
    z = Series.gen(order, "z")
    inv = _geom(order, "z")
    kdf = HyperParams.KdF211(A, -A - 2 * k - 2 * l, -k, -l, Q(1, 2) - k - l, -2 * k, -2 * l)
    lhs = Series([1, -1], order, "z") ** (-A) * terminating_double_sum(kdf, -z * inv, inv)
    h = Q(1, 2)
    p1 = (pochhammer((A + 1) / 2, l) * pochhammer((A + 1) / 2 + k, l)
          / (pochhammer(h, l) * pochhammer(k + h, l)))
    p2 = (pochhammer((A + 1) / 2, k) * pochhammer((A + 1) / 2 + l, k) * pochhammer(A / 2, k + l + 1) ** 2
          / (pochhammer(h, k) * pochhammer(h, k + 1) ** 2 * pochhammer(h, l) * pochhammer(h, k + l)))
    f1 = _hyp([A / 2, (A + 1) / 2 + l], [h - k], z)
    f2 = _hyp([(A + 1) / 2 + k, A / 2 + k + l + 1], [Q(3, 2) + k], z)
    rhs = f1 * f1 * p1 - (f2 * f2).shift(2 * k + 1).truncate(order) * p2
    return lhs, rhs


def _chaundy(params, order):
    a, b, c = params["a"], params["b"], params["c"]
    x = Series.gen(order, "x")
    h = Q(1, 2)
    lhs = _hyp([a, b], [c], x) * _hyp([1 + a - c, 1 + b - c], [2 - c], x)
    kdf = HyperParams.KdF122(h, a - b + h, a + b - c + h, b - a + h, c - a - b + h, c, 2 - c)
    y = -x * _geom(order, "x")
    rhs = Series([1, -1], order, "x") ** (c - a - b - h) * terminating_double_sum(kdf, x, y)
    return lhs, rhs


def _altclaust_poly(a, k, l):
    """``z^k KdF122(...| 1-1/z, 1-z)`` cleared: returns (P, D) with the value P/D."""
    z = Poly.gen("z")
    one = Poly.const(1, "z")
    kdf = HyperParams.KdF122(Q(1, 2), k + 1, l + 1, -k, -l, a + k + l + 1, 1 - a - k - l)
    val, d, kk, _ = double_sum_cleared(kdf, (z - 1, z), (1 - z, one))
    return val * z ** (k - kk), d


def _altclaust(params, order):
    k, l = params["k"], params["l"]
    poly, d = _altclaust_poly(A, k, l)
    if poly.degree != k + l:
        raise ArithmeticError(f"KdF122 polynomial has degree {poly.degree}, expected {k + l}")
    u = Series.gen(order, "u")                               # u = 1 - z
    f1 = _hyp([A / 2, (A + 1) / 2 + l], [A + k + l + 1], u, clear=True)
    f2 = _hyp([-A / 2 - k - l, (1 - A) / 2 - k], [1 - A - k - l], u, clear=True)
    zpoly = poly(Poly([1, -1], "u"))                          # substitute z = 1 - u
    return _frac_mul(f1, f2), Frac(Series.from_poly(zpoly, order, "u"), d)


def _altclau2(params, order):
    l = params["l"]
    u = Series.gen(order, "u")
    f1 = _hyp([A / 2, (A + 1) / 2 + l], [A + l + 1], u, clear=True)
    f2 = _hyp([-A / 2 - l, (1 - A) / 2], [1 - A - l], u, clear=True)
    f3 = _hyp([Q(1, 2), -l, l + 1], [1 - A - l, 1 + A + l], u, clear=True)
    return _frac_mul(f1, f2), f3


# ---------------------------------------------------------------------------
# Section 4: theta-polynomial pull-backs
# ---------------------------------------------------------------------------

def _theta(n):
    from .transforms import theta_pair
    tp = theta_pair(n)
    return tp.theta1, tp.theta2


def _dhtra(params, order):
    n = params["n"]
    t1, t2 = _theta(n)
    x = Poly.gen("x")
    return (1 - x) ** n, substitute_poly(t1, x * x) - x * substitute_poly(t2, x * x)


def substitute_poly(p: Poly, arg: Poly) -> Poly:
    acc = Poly((), arg.var)
    for c in reversed(p.coeffs):
        acc = acc * arg + c
    return acc


def _dhtrb(params, order):
    n = params["n"]
    t1, t2 = _theta(n)
    x = Poly.gen("x")
    return (1 - x) ** n, t1 * t1 - x * t2 * t2


def _theta_hyp(params, order):
    from .transforms import theta_hypergeometric
    n = params["n"]
    return list(_theta(n)), list(theta_hypergeometric(n))


def _tcheby(params, order):
    from .transforms import tchebyshev_pair, theta_tchebyshev_sides
    n = params["n"]
    return list(tchebyshev_pair(n)), list(theta_tchebyshev_sides(n))


def _ser(p: Poly, order, var="x"):
    return Series.from_poly(Poly(p.coeffs, var), order, var)


def _phi_series(n, order):
    t1, t2 = _theta(n)
    s1 = _ser(t1, order)
    return s1, _ser(t2, order), _ser(Poly.gen("x") * t2 * t2, order) * (s1 * s1).inverse()


def _dhtr1(params, order):
    n = params["n"]
    x = Series.gen(order, "x")
    s1, _, phi = _phi_series(n, order)
    lhs = _hyp([n * A / 2, (n * A + 1) / 2], [Q(1, 2)], x)
    rhs = s1 ** (-A) * _hyp([A / 2, (A + 1) / 2], [Q(1, 2)], phi)
    return lhs, rhs


def _dhtr2(params, order):
    n = params["n"]
    t1, t2 = _theta(n)
    if t2(0) != n:
        raise ArithmeticError(f"theta2(0) = {t2(0)}, expected {n}")
    x = Series.gen(order, "x")
    s1, s2, phi = _phi_series(n, order)
    lhs = _hyp([(n * A + 1) / 2, n * A / 2 + 1], [Q(3, 2)], x)
    rhs = s1 ** (-A - 1) * s2 * Q(1, n) * _hyp([(A + 1) / 2, A / 2 + 1], [Q(3, 2)], phi)
    return lhs, rhs


def _dhtr3(params, order):
    n = params["n"]
    x = Series.gen(order, "x")
    _, s2, _ = _phi_series(n, order)
    one_m = Series([1, -1], order, "x")
    lhs = _hyp([n * A / 2, -n * A / 2], [Q(1, 2)], -x * one_m.inverse())
    arg = -x * s2 * s2 * (one_m ** n).inverse()
    rhs = _hyp([A / 2, -A / 2], [Q(1, 2)], arg)
    return lhs, rhs


def _dhtr4(params, order):
    """Expanded at x = 1 in u = 1 - x."""
    n = params["n"]
    t1, _ = _theta(n)
    if t1(1) != 2 ** (n - 1):
        raise ArithmeticError(f"theta1(1) = {t1(1)}, expected {2 ** (n - 1)}")
    u = Series.gen(order, "u")
    t1u = Series.from_poly(t1(Poly([1, -1], "u")), order, "u") * Q(1, 2 ** (n - 1))
    lhs = _hyp([n * A / 2, (n * A + 1) / 2], [n * A + 1], u, clear=True)
    # (1-x)^n / theta1^2 with theta1 = 2^(n-1) t1u
    arg = (t1u * t1u).inverse().shift(n).truncate(order) * Q(1, 4 ** (n - 1))
    f = _hyp([A / 2, (A + 1) / 2], [A + 1], arg, clear=True)
    return lhs, Frac(t1u ** (-A) * f.value, f.denom)


def _dhtr3_parity(params, order, odd):
    """Exact form: the argument -x theta2^2/(1-x)^n at x/(x-1).

    With M = (x-1)^d theta2(x/(x-1)), d = deg theta2, the argument is
    x (1-x)^(n-1-2d) M^2, so the rewritten identities reduce to M^2 = n^2 F^2.
    """
    n = params["n"]
    if (n % 2 == 1) != odd:
        raise ValueError(f"n = {n} has the wrong parity for this entry")
    if n < 2:
        raise ValueError("n must be at least 2")
    _, t2 = _theta(n)
    x = Poly.gen("x")
    d = (n - 1) // 2
    M = moebius_involution(t2, d)
    if odd:
        f = pfq_terminating([Q(1 - n, 2), Q(1 + n, 2)], [Q(3, 2)], x)
    else:
        f = pfq_terminating([1 - Q(n, 2), 1 + Q(n, 2)], [Q(3, 2)], x)
    f = f if isinstance(f, Poly) else Poly.const(f)
    return M * M, f * f * (n * n)


def _dhtr3_odd(params, order):
    return _dhtr3_parity(params, order, True)


def _dhtr3_even(params, order):
    return _dhtr3_parity(params, order, False)


# ---------------------------------------------------------------------------
# Klein pull-back transformations
# ---------------------------------------------------------------------------

def _klein_data(k, l, m, n):
    from .klein import c_constant, klein_psi, klein_theta
    t1, t2 = klein_theta(k, l, m, n, "F3")
    psi = klein_psi(k, l, m, n, "KdF122")
    return t1, t2, psi, c_constant(k, l, m, n, t1, t2, psi)


def _normed(p: Poly, at, order, var="x"):
    v = p(at)
    if v == 0:
        raise ArithmeticError("normalizing value vanishes")
    return Series.from_poly(Poly(p.coeffs, var), order, var) * (1 / Q(v))


def _klein_phi(t1, t2, k, order):
    s1 = _ser(t1, order)
    s2 = _ser(t2, order)
    return (s2 * s2 * (s1 * s1).inverse()).shift(2 * k + 1).truncate(order)


def _kp(params):
    k, l, m, n = (int(params[key]) for key in ("k", "l", "m", "n"))
    return k, l, m, n, Q(n, m)


def _klein_t1(params, order):
    k, l, m, n, r = _kp(params)
    t1, t2, _, _ = _klein_data(k, l, m, n)
    x = Series.gen(order, "x")
    lhs = _hyp([-r / 2 - Q(k + l, 2), Q(1 - k + l, 2) - r / 2], [Q(1, 2) - k], x)
    phi = _klein_phi(t1, t2, k, order)
    rhs = _normed(t1, 0, order) ** Q(1, m) * _hyp([Q(-1, 2 * m), Q(1, 2) - Q(1, 2 * m)], [Q(1, 2)], phi)
    return lhs, rhs


def _klein_t2(params, order):
    k, l, m, n, r = _kp(params)
    t1, t2, _, _ = _klein_data(k, l, m, n)
    x = Series.gen(order, "x")
    lhs = _hyp([Q(1 + k - l, 2) - r / 2, Q(k + l, 2) + 1 - r / 2], [Q(3, 2) + k], x)
    phi = _klein_phi(t1, t2, k, order)
    rhs = (_normed(t1, 0, order) ** (Q(1, m) - 1) * _normed(t2, 0, order)
           * _hyp([Q(1, 2) - Q(1, 2 * m), 1 - Q(1, 2 * m)], [Q(3, 2)], phi))
    return lhs, rhs


def _klein_t3(params, order):
    k, l, m, n, r = _kp(params)
    t1, t2, psi, C = _klein_data(k, l, m, n)
    x = Series.gen(order, "x")
    one_m = Series([1, -1], order, "x")
    lhs = _hyp([-r / 2 - Q(k + l, 2), r / 2 - Q(k + l, 2)], [Q(1, 2) - k], -x * one_m.inverse())
    s2 = _ser(t2, order)
    ps = _ser(psi, order)
    arg = (-(s2 * s2) * (one_m ** n * ps ** m).inverse() * (1 / C)).shift(2 * k + 1).truncate(order)
    rhs = (_normed(psi, 0, order) ** Q(1, 2) * one_m ** (-Q(k + l, 2))
           * _hyp([Q(-1, 2 * m), Q(1, 2 * m)], [Q(1, 2)], arg))
    return lhs, rhs


def _klein_t4(params, order):
    """Expanded at x = 1 in u = 1 - x."""
    k, l, m, n, r = _kp(params)
    t1, _, psi, C = _klein_data(k, l, m, n)
    u = Series.gen(order, "u")
    at1 = Poly([1, -1], "u")
    lhs = _hyp([-r / 2 - Q(k + l, 2), Q(1 - k + l, 2) - r / 2], [1 - r], u)
    t1u = Series.from_poly(t1(at1), order, "u")
    psu = Series.from_poly(psi(at1), order, "u")
    arg = (psu ** m * (t1u * t1u).inverse() * C).shift(n).truncate(order)
    rhs = (t1u * (1 / Q(t1(1)))) ** Q(1, m) * _hyp(
        [Q(-1, 2 * m), Q(1, 2) - Q(1, 2 * m)], [1 - Q(1, m)], arg)
    return lhs, rhs


def _minvar(params, order):
    from .klein import semi_invariant_check
    k, l, m, n, _ = _kp(params)
    return [semi_invariant_check(k, l, m, n)], [True]


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

_EXACT = "exact-polynomial"
_Z = "series-in-z"
_T = "series-in-sqrt-z"
_AT1 = "series-at-1"

_ABC = {"A": "a", "B": "1/3", "C": "3/4"}
_KL = {"k": 1, "l": 1}
_KLMN = {"k": 1, "l": 0, "m": 2, "n": 1}

_ENTRIES = [
    ("euler", "Euler's fractional-linear transformation", _ABC, _Z, _euler, ""),
    ("pfaff", "Pfaff's fractional-linear transformation", _ABC, _Z, _pfaff, ""),
    ("diha", "elementary expressions for general dihedral hypergeometric functions (F3 form at z = 1)",
     _KL, _AT1, _diha, "expanded at z = 1 via z = (1-w)^2, sqrt(z) = 1-w"),
    ("dih12", "elementary expressions for general dihedral hypergeometric functions (even F2 form)",
     _KL, _T, _dih12, ""),
    ("dih32", "elementary expressions for general dihedral hypergeometric functions (odd F2 form)",
     _KL, _T, _dih32, ""),
    ("dihedr2", "simplest expressions for the k = l = 0 case", {}, _T, _dihedr2, ""),
    ("quadrkk", "quadratic transformation that reduces to kl = 0", {"k": 1}, _Z, _quadrkk, ""),
    ("r2f3", "terminating F2 sums become terminating F3 sums", _KL, _EXACT, _r2f3,
     "rational identity in (x, y) checked on a (k+2) x (l+2) grid over Q[a]"),
    ("rev32", "reversing summation order in both directions", _KL, _EXACT, _rev32,
     "exact polynomial identity in x over Q[a]"),
    ("f2f2", "symmetry of the F2 dihedral expression", _KL, _EXACT, _f2f2, ""),
    ("f3f3", "symmetry of the F3 dihedral expression", _KL, _EXACT, _f3f3, ""),
    ("clausen", "generalization of Clausen's formula", {}, _Z, _clausen,
     "two symbolic parameters as Q[s][A] with B = s - A"),
    ("symsq", "symmetric square identity in a neighbourhood of z = 0 (first form)",
     {"k": 1}, _Z, _symsq, ""),
    ("symsq2", "symmetric square identity in a neighbourhood of z = 0 (second form)",
     {"l": 1}, _Z, _symsq2, "terminating 3F2 at 1/(1-z) expanded as a rational function"),
    ("genelem", "general dihedral symmetric square identity in a neighbourhood of z = 0",
     _KL, _Z, _genelem, ""),
    ("geclausen", "direct generalization of Clausen's identity", {"l": 1}, _Z, _geclausen,
     "two symbolic parameters as Q[s][A] with B = s - A"),
    ("chaundy", "companion to Clausen's identity", {"a": "a", "b": "1/5", "c": "2/3"}, _Z, _chaundy, ""),
    ("altclaust", "the KdF122 product is a polynomial in z of degree k + l", _KL, _AT1, _altclaust,
     "expanded at z = 1 in u = 1 - z"),
    ("altclau2", "the k = 0 product simplifies to a terminating 3F2 sum", {"l": 1}, _AT1, _altclau2,
     "expanded at z = 1 in u = 1 - z"),
    ("dhtra", "(1-x)^n = theta1(x^2) - x theta2(x^2)", {"n": 4}, _EXACT, _dhtra, ""),
    ("dhtrb", "(1-x)^n = theta1(x)^2 - x theta2(x)^2", {"n": 4}, _EXACT, _dhtrb, ""),
    ("dhtr1", "degree-n pull-back, 2F1(na/2, (na+1)/2; 1/2; x)", {"n": 3}, _Z, _dhtr1, ""),
    ("dhtr2", "degree-n pull-back, 2F1((na+1)/2, na/2+1; 3/2; x)", {"n": 3}, _Z, _dhtr2, ""),
    ("dhtr3", "degree-n pull-back, 2F1(na/2, -na/2; 1/2; x/(x-1))", {"n": 3}, _Z, _dhtr3, ""),
    ("dhtr4", "degree-n pull-back at x = 1, 2F1(na/2, (na+1)/2; na+1; 1-x)", {"n": 3}, _AT1, _dhtr4,
     "expanded in u = 1 - x"),
    ("theta-hyp", "theta polynomials as terminating 2F1 sums", {"n": 5}, _EXACT, _theta_hyp, ""),
    ("tcheby", "theta polynomials and Tchebyshev polynomials", {"n": 5}, _EXACT, _tcheby, ""),
    ("dhtr3-odd", "the x/(x-1) pull-back rewritten for odd n", {"n": 3}, _EXACT, _dhtr3_odd,
     "argument identity checked exactly; the series form is the dhtr3 entry"),
    ("dhtr3-even", "the x/(x-1) pull-back rewritten for even n", {"n": 4}, _EXACT, _dhtr3_even,
     "argument identity checked exactly; the series form is the dhtr3 entry"),
    ("klein-t1", "Klein pull-back transformation at x = 0, lower parameter 1/2 - k",
     _KLMN, _Z, _klein_t1, ""),
    ("klein-t2", "Klein pull-back transformation at x = 0, lower parameter 3/2 + k",
     _KLMN, _Z, _klein_t2, ""),
    ("klein-t3", "Klein pull-back transformation at x = 0 with argument x/(x-1)",
     _KLMN, _Z, _klein_t3, ""),
    ("klein-t4", "Klein pull-back transformation at x = 1", _KLMN, _AT1, _klein_t4,
     "expanded in u = 1 - x"),
    ("minvar-theta", "semi-invariants of degree m and the Theta polynomials", _KLMN, _EXACT, _minvar, ""),
]

# Two symbolic parameters make these much slower; order 12 still exceeds
# twice the degree of every constructed polynomial.
_ORDER_OVERRIDES = {"clausen": 12, "geclausen": 12}

_REGISTRY = {
    eid: IdentityEntry(eid, anchor, dict(params), mode,
                       None if mode == _EXACT else _ORDER_OVERRIDES.get(eid, DEFAULT_ORDER), build, note)
    for eid, anchor, params, mode, build, note in _ENTRIES
}


def identity_registry() -> list[IdentityEntry]:
    return list(_REGISTRY.values())


def get_entry(eid: str) -> IdentityEntry:
    try:
        return _REGISTRY[eid]
    except KeyError:
        raise KeyError(f"unknown identity id {eid!r}") from None


def _coerce(key, v):
    if isinstance(v, str):
        s = v.strip()
        if s in ("a", "symbolic"):
            return A
        v = Q(s)
    if key in ("k", "l", "m", "n"):
        if int(v) != v or v < 0:
            raise ValueError(f"parameter {key} must be a nonnegative integer, got {v}")
        return int(v)
    if isinstance(v, Poly):
        return v
    return Q(v)


def _resolve(entry: IdentityEntry, params: dict | None) -> dict:
    params = dict(params or {})
    unknown = set(params) - set(entry.params)
    if unknown:
        raise ValueError(f"{entry.id}: unknown parameters {sorted(unknown)}; "
                         f"expected {sorted(entry.params)}")
    merged = {**entry.params, **params}
    out = {key: _coerce(key, v) for key, v in merged.items()}
    if "m" in out and out["m"] < 2:
        raise ValueError("m must be at least 2")
    if "n" in out and out["n"] < 1:
        raise ValueError("n must be at least 1")
    return out


def _show(v):
    if v is None:
        return None
    if isinstance(v, Series):
        return str(v)
    return str(v)


def verify_identity(eid: str, params: dict | None = None, order: int | None = None) -> VerificationReport:
    """Build both sides of a registry identity and compare them exactly."""
    entry = get_entry(eid)
    vals = _resolve(entry, params)
    if entry.mode == _EXACT:
        order = None
    elif order is None:
        order = entry.default_order
    elif order < 1:
        raise ValueError("order must be positive")
    lhs, rhs = entry.build(vals, order if order is not None else 0)
    mm = _first_mismatch(lhs, rhs, order)
    shown = {key: (str(v) if not isinstance(v, Poly) else "symbolic") for key, v in vals.items()}
    if mm is None:
        return VerificationReport(eid, shown, order, entry.mode, "verified", None, entry.note)
    idx, lv, rv = mm
    if idx == -1:
        raise ArithmeticError(f"{eid}: sides were not computed to order {order}")
    return VerificationReport(eid, shown, order, entry.mode, "mismatch",
                              {"index": idx, "lhs": _show(lv), "rhs": _show(rv)}, entry.note)
