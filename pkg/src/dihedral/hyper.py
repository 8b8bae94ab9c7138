"""Pochhammer symbols and terminating or truncated hypergeometric sums.

Terms are assembled from Pochhammer products, so quotients such as
``(-k)_p / (-2k)_p`` are evaluated without dividing by zero for ``p <= k``.
A term whose lower product vanishes is accepted only when its upper product
vanishes as well (the term is then zero); otherwise ``EvaluationError`` is
raised with the offending index.

Lower parameters that are non-constant polynomials in a parameter (``a``,
``s``, ...) can be *cleared*: each ``1/(c)_j`` is replaced by
``(c+j)_{M-j}`` and the common denominator ``D = (c)_M`` is returned
separately. This keeps all arithmetic inside a polynomial ring.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from gmpy2 import mpq

from .algebra import Poly, RatFunc, Series, _scalar

__all__ = [
    "EvaluationError", "pochhammer", "nonpositive_integer", "pfq_coefficients",
    "pfq_series", "pfq_terminating", "pfq_cleared", "HyperParams",
    "double_sum_coefficients", "terminating_double_sum", "double_sum_cleared",
]


class EvaluationError(ArithmeticError):
    """A hypergeometric term is undefined (uncancelled zero lower factor)."""


def pochhammer(base, count: int):
    """Rising factorial ``base (base+1) ... (base+count-1)``."""
    if count < 0:
        raise ValueError("Pochhammer count must be nonnegative")
    base = _scalar(base)
    acc = mpq(1)
    for i in range(count):
        acc = acc * (base + i)
    return acc


def _poch_list(base, m: int) -> list:
    base = _scalar(base)
    out = [mpq(1)]
    for i in range(m):
        out.append(out[-1] * (base + i))
    return out


def _tail_list(base, m: int) -> list:
    """``[(base+j)_{m-j} for j in 0..m]``."""
    base = _scalar(base)
    out = [mpq(1)] * (m + 1)
    for j in range(m - 1, -1, -1):
        out[j] = out[j + 1] * (base + j)
    return out


def _as_scalar(v):
    v = _scalar(v)
    if isinstance(v, Poly) and v.is_constant():
        return v.constant_value()
    return v


def nonpositive_integer(v):
    """Return ``k`` when ``v == -k`` for an integer ``k >= 0``, else ``None``."""
    v = _as_scalar(v)
    if isinstance(v, mpq) and v.denominator == 1 and v <= 0:
        return int(-v)
    return None


def _symbolic(v) -> bool:
    return isinstance(v, Poly) and not v.is_constant()


def _bound(uppers):
    ks = [k for k in map(nonpositive_integer, uppers) if k is not None]
    return min(ks) if ks else None


def _products(params, m):
    acc = [mpq(1)] * (m + 1)
    for c in params:
        pl = _poch_list(c, m)
        acc = [x * y for x, y in zip(acc, pl)]
    return acc


def _split_lowers(lowers, m, clear):
    """Constant-lower Pochhammer products, symbolic tails and the common denominator."""
    const = []
    tails = [mpq(1)] * (m + 1)
    denom = mpq(1)
    for c in lowers:
        c = _as_scalar(c)
        if _symbolic(c):
            tl = _tail_list(c, m)
            tails = [x * y for x, y in zip(tails, tl)]
            denom = denom * tl[0]
        else:
            const.append(c)
    if not clear and not isinstance(denom, mpq):
        # Fold symbolic denominators back in as rational functions.
        return const, [RatFunc(t, denom) for t in tails], mpq(1)
    return const, tails, denom


def pfq_coefficients(uppers, lowers, count: int, clear: bool = False):
    """First ``count`` series coefficients (fewer if the sum terminates).

    Returns ``(coeffs, D)``; without clearing ``D == 1``.
    """
    k = _bound(uppers)
    n = count if k is None else min(count, k + 1)
    m = max(n - 1, 0)
    up = _products(uppers, m)
    const, tails, denom = _split_lowers(lowers, m, clear)
    lo = _products(const, m)
    out = []
    for j in range(n):
        num = up[j]
        den = lo[j] * factorial(j)
        if den == 0:
            if num == 0:
                out.append(mpq(0))
                continue
            raise EvaluationError(f"undefined hypergeometric term at index {j}")
        out.append(num * tails[j] / den)
    return out, denom


def pfq_series(uppers, lowers, order: int, var: str = "x", clear: bool = False):
    """Truncated series of ``pFq(uppers; lowers; var)`` to ``order`` terms.

    With ``clear=True`` returns ``(series, D)`` where the true series is
    ``series / D``.
    """
    cs, denom = pfq_coefficients(uppers, lowers, order, clear)
    s = Series(cs, order, var)
    return (s, denom) if clear else s


def pfq_terminating(uppers, lowers, arg):
    """Finite sum ``sum_j prod (u)_j / prod (c)_j arg^j / j!``.

    ``arg`` may be a scalar, ``Poly``, ``RatFunc`` or ``Series``.
    """
    k = _bound(uppers)
    if k is None:
        raise EvaluationError("no nonpositive integer upper parameter; sum does not terminate")
    cs, _ = pfq_coefficients(uppers, lowers, k + 1)
    return _horner(cs, arg)


def _horner(cs, arg):
    acc = mpq(0)
    for c in reversed(cs):
        acc = acc * arg + c
    return acc


def pfq_cleared(uppers, lowers, num, den):
    """Terminating sum at ``num/den`` with denominators cleared.

    Returns ``(P, D, K)`` where the sum equals ``P / (D * den**K)``.
    """
    k = _bound(uppers)
    if k is None:
        raise EvaluationError("no nonpositive integer upper parameter; sum does not terminate")
    cs, denom = pfq_coefficients(uppers, lowers, k + 1, clear=True)
    big_k = len(cs) - 1
    acc = mpq(0)
    dp = mpq(1)
    for j in range(big_k, -1, -1):
        acc = acc + cs[j] * _pow(num, j) * dp
        dp = dp * den
    return acc, denom, big_k


def _pow(x, e):
    if e == 0:
        return mpq(1)
    return x ** e


# ---------------------------------------------------------------------------
# Double sums
# ---------------------------------------------------------------------------

@dataclass
class HyperParams:
    """Parameter groups of a double sum over ``p, q >= 0``.

    The term is ``prod (joint_upper)_{p+q} prod (p_upper)_p prod (q_upper)_q``
    over ``prod (joint_lower)_{p+q} prod (p_lower)_p prod (q_lower)_q p! q!``.
    """

    kind: str
    joint_upper: list = field(default_factory=list)
    joint_lower: list = field(default_factory=list)
    p_upper: list = field(default_factory=list)
    p_lower: list = field(default_factory=list)
    q_upper: list = field(default_factory=list)
    q_lower: list = field(default_factory=list)

    @classmethod
    def F2(cls, a, b1, b2, c1, c2):
        return cls("F2", [a], [], [b1], [c1], [b2], [c2])

    @classmethod
    def F3(cls, a1, a2, b1, b2, c):
        return cls("F3", [], [c], [a1, b1], [], [a2, b2], [])

    @classmethod
    def KdF211(cls, a, b, u1, u2, c, v1, v2):
        return cls("KdF211", [a, b], [c], [u1], [v1], [u2], [v2])

    @classmethod
    def KdF122(cls, a, u1, u2, v1, v2, b, c):
        return cls("KdF122", [a], [b, c], [u1, v1], [], [u2, v2], [])

    def bounds(self):
        """``(p_max, q_max, total_max)``; ``None`` where unbounded."""
        return _bound(self.p_upper), _bound(self.q_upper), _bound(self.joint_upper)


def _min_opt(*vals):
    vals = [v for v in vals if v is not None]
    return min(vals) if vals else None


def double_sum_coefficients(params: HyperParams, max_p=None, max_q=None, clear: bool = False):
    """Coefficient table ``c[p][q]`` and the common denominator ``D``.

    Index ranges come from the terminating parameters, optionally narrowed
    by ``max_p`` / ``max_q``; every range must end up finite.
    """
    bp, bq, bt = params.bounds()
    pm = _min_opt(bp, bt, max_p)
    qm = _min_opt(bq, bt, max_q)
    if pm is None or qm is None:
        raise EvaluationError("double sum has an unbounded summation index")
    tm = pm + qm if bt is None else min(bt, pm + qm)
    ju = _products(params.joint_upper, tm)
    pu = _products(params.p_upper, pm)
    qu = _products(params.q_upper, qm)
    jc, jt, jd = _split_lowers(params.joint_lower, tm, clear)
    pc, pt, pd = _split_lowers(params.p_lower, pm, clear)
    qc, qt, qd = _split_lowers(params.q_lower, qm, clear)
    jl, pl, ql = _products(jc, tm), _products(pc, pm), _products(qc, qm)
    table = []
    for p in range(pm + 1):
        row = []
        for q in range(qm + 1):
            if p + q > tm:
                row.append(mpq(0))
                continue
            num = ju[p + q] * pu[p] * qu[q]
            den = jl[p + q] * pl[p] * ql[q] * (factorial(p) * factorial(q))
            if den == 0:
                if num == 0:
                    row.append(mpq(0))
                    continue
                raise EvaluationError(f"undefined {params.kind} term at index (p={p}, q={q})")
            row.append(num * jt[p + q] * pt[p] * qt[q] / den)
        table.append(row)
    return table, jd * pd * qd


def _series_limit(x):
    """Number of powers of a series argument needed before truncation."""
    if isinstance(x, Series):
        v = x.valuation()
        if v == 0:
            return None
        return -(-x.order // v)
    return None


def terminating_double_sum(params: HyperParams, x, y, clear: bool = False):
    """Evaluate the double sum at ``(x, y)``.

    Arguments may be scalars, ``Poly``, ``RatFunc`` or ``Series``. For a
    series argument with positive valuation an unbounded index is cut where
    the powers leave the truncation window. With ``clear=True`` returns
    ``(value, D)`` where the sum equals ``value / D``.
    """
    table, denom = double_sum_coefficients(params, _series_limit(x), _series_limit(y), clear)
    pm, qm = len(table) - 1, len(table[0]) - 1
    xs = _powers(x, pm)
    ys = _powers(y, qm)
    total = mpq(0)
    for q in range(qm + 1):
        inner = mpq(0)
        for p in range(pm + 1):
            c = table[p][q]
            if c != 0:
                inner = inner + c * xs[p]
        total = total + inner * ys[q]
    return (total, denom) if clear else total


def _powers(x, m):
    out = [mpq(1)]
    for _ in range(m):
        out.append(out[-1] * x)
    if isinstance(x, Series):
        one = Series.one(x.order, x.var)
        out[0] = one
    return out


def double_sum_cleared(params: HyperParams, xnd, ynd):
    """Double sum at ``x = xn/xd``, ``y = yn/yd`` with all denominators cleared.

    Returns ``(P, D, K, L)`` with ``P = D * xd**K * yd**L * F(x, y)``, where
    ``K`` and ``L`` are the summation bounds.
    """
    xn, xd = xnd
    yn, yd = ynd
    table, denom = double_sum_coefficients(params, clear=True)
    pm, qm = len(table) - 1, len(table[0]) - 1
    xs = [_pow(xn, p) * _pow(xd, pm - p) for p in range(pm + 1)]
    ys = [_pow(yn, q) * _pow(yd, qm - q) for q in range(qm + 1)]
    total = mpq(0)
    for q in range(qm + 1):
        inner = mpq(0)
        for p in range(pm + 1):
            c = table[p][q]
            if c != 0:
                inner = inner + c * xs[p]
        total = total + inner * ys[q]
    return total, denom, pm, qm
