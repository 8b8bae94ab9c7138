"""Exact arithmetic: rationals, dense polynomials, rational functions,
half-integer power expressions and truncated power series.

Coefficient domains are duck-typed. A coefficient is anything supporting
``+ - * ==`` and exact ``/``: an ``mpq`` (the base scalar), a ``Poly`` in a
parameter variable, or a ``RatFunc`` in a parameter variable. Nesting is
resolved by variable rank: an object whose variable has the higher rank is
the outer ring and treats lower-ranked objects as scalars.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Integral

from gmpy2 import mpq

__all__ = [
    "Q", "q", "Poly", "RatFunc", "Laurent", "SqrtPoly", "Series",
    "poly_gcd", "squarefree_decomposition", "moebius_involution",
    "sqrtpoly_mul", "sqrtpoly_pow", "series_compose", "series_pow_rational",
    "q_str", "poly_to_json", "poly_from_json", "substitute_ratio",
]

Q = mpq

# Parameter variables nest inside the main variables; "s" < "A" realizes Q[s][A].
_VAR_RANK = {"s": 1, "A": 2, "a": 3, "r": 3}
_MAIN_RANK = 10


def q(value) -> mpq:
    """Coerce an int, ``Fraction``, string ``"p/q"`` or ``mpq`` to ``mpq``."""
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    return mpq(value)


def _scalar(c):
    if isinstance(c, (Integral, Fraction)) and not isinstance(c, bool):
        return q(c)
    return c


def _rank(obj) -> int:
    var = getattr(obj, "var", None)
    if var is None:
        return 0
    return _VAR_RANK.get(var, _MAIN_RANK)


def _reflect(self, other, name):
    # Python skips reflected methods for operands of the same class, so an
    # outer-ring operand of our own class must be dispatched by hand.
    if type(other) is type(self):
        return getattr(other, name)(self)
    return NotImplemented


def _is_field_scalar(c) -> bool:
    return isinstance(c, (mpq, RatFunc))


def q_str(c) -> str:
    c = q(c)
    return str(c)


# ---------------------------------------------------------------------------
# Dense univariate polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Dense polynomial, coefficients lowest degree first, no trailing zeros."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var: str = "x"):
        cs = [_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def _make(cls, cs, var):
        while cs and cs[-1] == 0:
            cs.pop()
        p = cls.__new__(cls)
        p.coeffs = tuple(cs)
        p.var = var
        return p

    @classmethod
    def gen(cls, var: str = "x") -> Poly:
        return cls._make([mpq(0), mpq(1)], var)

    @classmethod
    def const(cls, c, var: str = "x") -> Poly:
        return cls._make([_scalar(c)], var)

    @classmethod
    def monomial(cls, c, n: int, var: str = "x") -> Poly:
        return cls._make([mpq(0)] * n + [_scalar(c)], var)

    # -- basic queries -----------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else mpq(0)

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return mpq(0)

    __getitem__ = coeff

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self):
        return self.coeffs[0] if self.coeffs else mpq(0)

    def __bool__(self):
        return bool(self.coeffs)

    # -- coercion ------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.var == self.var:
                return other
        elif isinstance(other, (RatFunc, Series)) and other.var == self.var:
            return None
        ro, rs = _rank(other), _rank(self)
        if ro > rs:
            return None
        if ro == rs:
            raise TypeError(f"cannot mix variables {self.var!r} and {other.var!r}")
        return Poly._make([_scalar(other)], self.var)

    # -- ring operations -----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return _reflect(self, other, "__radd__")
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._make(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly._make([-c for c in self.coeffs], self.var)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return _reflect(self, other, "__rsub__")
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return _reflect(self, other, "__rmul__")
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Poly._make([], self.var)
        if len(b) == 1:
            c = b[0]
            return Poly._make([x * c for x in a], self.var)
        if len(a) == 1:
            c = a[0]
            return Poly._make([c * y for y in b], self.var)
        out = [mpq(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly._make(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, Integral) or e < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = Poly.const(1, self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def divmod(self, d: Poly):
        """Long division; the leading coefficient of ``d`` must divide exactly."""
        if not d.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        lc = d.coeffs[-1]
        dd = len(d.coeffs) - 1
        qd = len(r) - 1 - dd
        if qd < 0:
            return Poly._make([], self.var), self
        qs = [mpq(0)] * (qd + 1)
        for i in range(qd, -1, -1):
            c = r[i + dd]
            if c != 0:
                f = c / lc
                qs[i] = f
                for j, y in enumerate(d.coeffs):
                    r[i + j] = r[i + j] - f * y
        return Poly._make(qs, self.var), Poly._make(r[:dd], self.var)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __truediv__(self, other):
        if isinstance(other, Poly) and other.var == self.var:
            quo, rem = self.divmod(other)
            if rem:
                raise ArithmeticError("inexact polynomial division")
            return quo
        if isinstance(other, (RatFunc, Series)) and other.var == self.var:
            return NotImplemented
        ro, rs = _rank(other), _rank(self)
        if ro > rs:
            return _reflect(self, other, "__rtruediv__")
        if ro == rs:
            raise TypeError(f"cannot mix variables {self.var!r} and {other.var!r}")
        return Poly._make([c / other for c in self.coeffs], self.var)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    # -- comparison ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly) and other.var == self.var:
            return self.coeffs == other.coeffs
        if isinstance(other, (RatFunc, Series)) and other.var == self.var:
            return NotImplemented
        if _rank(other) > _rank(self):
            return NotImplemented
        if isinstance(other, Poly) and _rank(other) == _rank(self):
            return False
        if len(self.coeffs) > 1:
            return False
        return self.constant_value() == other

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.constant_value())
        return hash((self.var, self.coeffs))

    # -- calculus and evaluation -----------------------------------------------
    def __call__(self, value):
        acc = mpq(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def diff(self) -> Poly:
        return Poly._make([c * i for i, c in enumerate(self.coeffs)][1:], self.var)

    def shift(self, k: int) -> Poly:
        """Multiply by ``var**k``."""
        if not self.coeffs:
            return self
        return Poly._make([mpq(0)] * k + list(self.coeffs), self.var)

    def monic(self) -> Poly:
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic form")
        return self / self.lc

    def map_coeffs(self, fn) -> Poly:
        return Poly([fn(c) for c in self.coeffs], self.var)

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        raise ValueError("valuation of the zero polynomial")

    # -- display -------------------------------------------------------------
    def __repr__(self):
        return f"Poly({list(map(str, self.coeffs))!r}, var={self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = str(c)
            if not isinstance(c, mpq):
                cs = f"({cs})"
            if i == 0:
                parts.append(cs)
            else:
                mono = self.var if i == 1 else f"{self.var}^{i}"
                parts.append(mono if c == 1 else f"{cs}*{mono}")
        return " + ".join(parts)


def poly_gcd(p: Poly, r: Poly) -> Poly:
    """Monic gcd of two polynomials over a field."""
    if p.is_zero() and r.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    a, b = p, r
    while b:
        a, b = b, a % b
        if b:
            b = b.monic()
    return a.monic()


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic squarefree factors with multiplicities."""
    if p.degree < 1:
        return []
    p = p.monic()
    dp = p.diff()
    a = poly_gcd(p, dp)
    b = p / a
    c = dp / a
    out = []
    i = 1
    while b.degree > 0:
        d = c - b.diff()
        g = poly_gcd(b, d) if d else b.monic()
        if g.degree > 0:
            out.append((g, i))
        b = b / g
        c = d / g if d else d
        i += 1
    return out


def moebius_involution(p: Poly, d: int) -> Poly:
    """``(x-1)**d * p(x/(x-1))`` as a polynomial; needs ``d >= deg p``."""
    if d < p.degree:
        raise ValueError(f"degree cap {d} below polynomial degree {p.degree}")
    x = Poly.gen(p.var)
    xm1 = x - 1
    out = Poly((), p.var)
    for i, c in enumerate(p.coeffs):
        if c != 0:
            out = out + c * x ** i * xm1 ** (d - i)
    return out


def substitute_ratio(p: Poly, num: Poly, den: Poly, d: int | None = None) -> Poly:
    """``den**d * p(num/den)`` as a polynomial; ``d`` defaults to ``deg p``."""
    if d is None:
        d = max(p.degree, 0)
    if d < p.degree:
        raise ValueError(f"degree cap {d} below polynomial degree {p.degree}")
    out = Poly((), num.var)
    dpow = [Poly.const(1, num.var)]
    for _ in range(d):
        dpow.append(dpow[-1] * den)
    npow = Poly.const(1, num.var)
    for i, c in enumerate(p.coeffs):
        if c != 0:
            out = out + c * npow * dpow[d - i]
        npow = npow * num
    return out


def poly_to_json(p: Poly) -> list[str]:
    return [q_str(c) for c in p.coeffs]


def poly_from_json(items, var: str = "x") -> Poly:
    return Poly([mpq(s) for s in items], var)


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

class RatFunc:
    """Quotient of two polynomials in one variable.

    Over a field the pair is kept in lowest terms with a monic denominator;
    over coefficient rings without a gcd the pair is stored as given.
    """

    __slots__ = ("num", "den", "var")

    def __init__(self, num, den=None, var: str | None = None, reduce: bool = True):
        if var is None:
            var = getattr(num, "var", None) or getattr(den, "var", None) or "x"
        if not (isinstance(num, Poly) and num.var == var):
            num = Poly.const(num, var) if not isinstance(num, Poly) or num.var != var else num
        if den is None:
            den = Poly.const(1, var)
        elif not (isinstance(den, Poly) and den.var == var):
            den = Poly.const(den, var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce and all(_is_field_scalar(c) for c in num.coeffs + den.coeffs):
            if num.is_zero():
                den = Poly.const(1, var)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num / g, den / g
                lc = den.lc
                if lc != 1:
                    num, den = num / lc, den / lc
        self.num, self.den, self.var = num, den, var

    @classmethod
    def gen(cls, var: str = "x") -> RatFunc:
        return cls(Poly.gen(var))

    def _coerce(self, other):
        if isinstance(other, RatFunc) and other.var == self.var:
            return other
        if isinstance(other, Poly) and other.var == self.var:
            return RatFunc(other)
        if isinstance(other, Series) and other.var == self.var:
            return None
        ro, rs = _rank(other), _rank(self)
        if ro > rs:
            return None
        if ro == rs:
            raise TypeError(f"cannot mix variables {self.var!r} and {other.var!r}")
        return RatFunc(Poly.const(other, self.var))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return _reflect(self, other, "__radd__")
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return _reflect(self, other, "__rsub__")
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return _reflect(self, other, "__rmul__")
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return _reflect(self, other, "__rtruediv__")
        if o.num.is_zero():
            raise ZeroDivisionError("rational function division by zero")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int):
        if e < 0:
            return RatFunc(self.den ** (-e), self.num ** (-e))
        return RatFunc(self.num ** e, self.den ** e)

    def __eq__(self, other):
        if isinstance(other, Series) and other.var == self.var:
            return NotImplemented
        if _rank(other) > _rank(self):
            return NotImplemented
        o = self._coerce(other)
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        if self.den.degree == 0 and self.den.lc == 1:
            return hash(self.num)
        return hash((self.num, self.den))

    def __call__(self, value):
        return self.num(value) / self.den(value)

    def diff(self) -> RatFunc:
        return RatFunc(self.num.diff() * self.den - self.num * self.den.diff(), self.den * self.den)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ArithmeticError("rational function is not a polynomial")
        return self.num / self.den.lc

    def __repr__(self):
        return f"RatFunc({self.num!s} / {self.den!s})"

    def __str__(self):
        if self.is_polynomial() and self.den.lc == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"


# ---------------------------------------------------------------------------
# Laurent polynomials and expressions in sqrt(x)
# ---------------------------------------------------------------------------

class Laurent:
    """``x**low * poly`` with ``poly(0) != 0`` unless the value is zero."""

    __slots__ = ("low", "poly")

    def __init__(self, poly: Poly, low: int = 0):
        if poly.is_zero():
            low = 0
        else:
            v = poly.valuation()
            if v:
                poly = Poly._make(list(poly.coeffs[v:]), poly.var)
                low += v
        self.low, self.poly = low, poly

    @property
    def var(self):
        return self.poly.var

    def is_zero(self):
        return self.poly.is_zero()

    def __add__(self, other: Laurent) -> Laurent:
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        low = min(self.low, other.low)
        return Laurent(self.poly.shift(self.low - low) + other.poly.shift(other.low - low), low)

    def __neg__(self):
        return Laurent(-self.poly, self.low)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Laurent):
            return Laurent(self.poly * other.poly, self.low + other.low)
        return Laurent(self.poly * other, self.low)

    __rmul__ = __mul__

    def shift(self, k: int) -> Laurent:
        return Laurent(self.poly, self.low + k)

    def __eq__(self, other):
        return self.low == other.low and self.poly == other.poly

    def to_poly(self) -> Poly:
        if self.is_zero():
            return self.poly
        if self.low < 0:
            raise ArithmeticError(f"negative power x^{self.low} in a polynomial")
        return self.poly.shift(self.low)

    def coeff(self, i: int):
        return self.poly.coeff(i - self.low)


class SqrtPoly:
    """``even(x) + sqrt(x) * odd(x)`` with Laurent polynomial parts."""

    __slots__ = ("even", "odd")

    def __init__(self, even: Laurent, odd: Laurent):
        self.even, self.odd = even, odd

    @property
    def var(self):
        return self.even.var

    @classmethod
    def from_t_laurent(cls, poly_t: Poly, low: int = 0, var: str = "x") -> SqrtPoly:
        """Split ``t**low * poly_t(t)`` with ``t = sqrt(x)`` into parts."""
        ev, od = {}, {}
        for i, c in enumerate(poly_t.coeffs):
            e = i + low
            if c == 0:
                continue
            if e % 2 == 0:
                ev[e // 2] = c
            else:
                od[(e - 1) // 2] = c
        return cls(_laurent_from_dict(ev, var), _laurent_from_dict(od, var))

    @classmethod
    def from_t_poly(cls, poly_t: Poly, var: str = "x") -> SqrtPoly:
        return cls.from_t_laurent(poly_t, 0, var)

    @classmethod
    def const(cls, c, var: str = "x") -> SqrtPoly:
        return cls(Laurent(Poly.const(c, var)), Laurent(Poly((), var)))

    def to_t_laurent(self, tvar: str = "t") -> tuple[int, Poly]:
        """Return ``(low, p)`` with value ``t**low * p(t)``."""
        terms = {}
        for i, c in enumerate(self.even.poly.coeffs):
            if c != 0:
                terms[2 * (self.even.low + i)] = c
        for i, c in enumerate(self.odd.poly.coeffs):
            if c != 0:
                terms[2 * (self.odd.low + i) + 1] = c
        if not terms:
            return 0, Poly((), tvar)
        low = min(terms)
        cs = [mpq(0)] * (max(terms) - low + 1)
        for e, c in terms.items():
            cs[e - low] = c
        return low, Poly(cs, tvar)

    def lower_bound(self) -> int:
        """Smallest exponent of ``t = sqrt(x)`` present."""
        return self.to_t_laurent()[0]

    def coeff_t(self, j: int):
        if j % 2 == 0:
            return self.even.coeff(j // 2)
        return self.odd.coeff((j - 1) // 2)

    def __add__(self, other):
        if not isinstance(other, SqrtPoly):
            other = SqrtPoly.const(other, self.var)
        return SqrtPoly(self.even + other.even, self.odd + other.odd)

    __radd__ = __add__

    def __neg__(self):
        return SqrtPoly(-self.even, -self.odd)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SqrtPoly):
            return SqrtPoly(self.even * other, self.odd * other)
        return sqrtpoly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return sqrtpoly_pow(self, e)

    def conj(self) -> SqrtPoly:
        """Image under ``sqrt(x) -> -sqrt(x)``."""
        return SqrtPoly(self.even, -self.odd)

    def __eq__(self, other):
        if not isinstance(other, SqrtPoly):
            other = SqrtPoly.const(other, self.var)
        return self.even == other.even and self.odd == other.odd

    def even_poly(self) -> Poly:
        return self.even.to_poly()

    def odd_poly(self) -> Poly:
        return self.odd.to_poly()

    def map_coeffs(self, fn) -> SqrtPoly:
        return SqrtPoly(Laurent(self.even.poly.map_coeffs(fn), self.even.low),
                        Laurent(self.odd.poly.map_coeffs(fn), self.odd.low))

    def __repr__(self):
        return f"SqrtPoly(even=x^{self.even.low}*({self.even.poly}), odd=x^{self.odd.low}*({self.odd.poly}))"


def _laurent_from_dict(d: dict, var: str) -> Laurent:
    if not d:
        return Laurent(Poly((), var))
    low = min(d)
    cs = [mpq(0)] * (max(d) - low + 1)
    for e, c in d.items():
        cs[e - low] = c
    return Laurent(Poly(cs, var), low)


def sqrtpoly_mul(u: SqrtPoly, v: SqrtPoly) -> SqrtPoly:
    """(e1 + sqrt(x) o1)(e2 + sqrt(x) o2) = (e1 e2 + x o1 o2) + sqrt(x)(e1 o2 + e2 o1)."""
    even = u.even * v.even + (u.odd * v.odd).shift(1)
    odd = u.even * v.odd + v.even * u.odd
    return SqrtPoly(even, odd)


def sqrtpoly_pow(u: SqrtPoly, e: int) -> SqrtPoly:
    if e < 0:
        raise ValueError("SqrtPoly powers need a nonnegative exponent")
    result = SqrtPoly.const(1, u.var)
    base = u
    while e:
        if e & 1:
            result = sqrtpoly_mul(result, base)
        e >>= 1
        if e:
            base = sqrtpoly_mul(base, base)
    return result


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------

class Series:
    """Power series known for exponents ``0 .. order-1``."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs, order: int | None = None, var: str = "x"):
        cs = [_scalar(c) for c in coeffs]
        if order is None:
            order = len(cs)
        if len(cs) < order:
            cs.extend([mpq(0)] * (order - len(cs)))
        self.coeffs = cs[:order]
        self.var = var

    @classmethod
    def _make(cls, cs, var):
        s = cls.__new__(cls)
        s.coeffs = cs
        s.var = var
        return s

    @classmethod
    def from_poly(cls, p: Poly, order: int, var: str | None = None) -> Series:
        return cls(p.coeffs[:order], order, var or p.var)

    @classmethod
    def from_ratfunc(cls, r: RatFunc, order: int, var: str | None = None) -> Series:
        var = var or r.var
        return cls.from_poly(r.num, order, var) * cls.from_poly(r.den, order, var).inverse()

    @classmethod
    def gen(cls, order: int, var: str = "x") -> Series:
        return cls([0, 1], order, var)

    @classmethod
    def one(cls, order: int, var: str = "x") -> Series:
        return cls([1], order, var)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def coeff(self, i: int):
        if i >= len(self.coeffs):
            raise IndexError(f"coefficient {i} beyond truncation order {self.order}")
        return self.coeffs[i]

    __getitem__ = coeff

    def truncate(self, order: int) -> Series:
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return Series._make(self.coeffs[:order], self.var)

    def valuation(self) -> int:
        """Index of the first nonzero coefficient; ``order`` when all vanish."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return self.order

    def _coerce(self, other):
        if isinstance(other, Series):
            if other.var != self.var:
                raise TypeError(f"cannot mix series in {self.var!r} and {other.var!r}")
            return other
        if isinstance(other, Poly) and other.var == self.var:
            return Series.from_poly(other, self.order)
        if isinstance(other, RatFunc) and other.var == self.var:
            return Series.from_ratfunc(other, self.order)
        if _rank(other) > _rank(self):
            return None
        return _scalar(other)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return _reflect(self, other, "__radd__")
        if isinstance(o, Series):
            n = min(self.order, o.order)
            return Series._make([self.coeffs[i] + o.coeffs[i] for i in range(n)], self.var)
        if not self.coeffs:
            return self
        return Series._make([self.coeffs[0] + o] + self.coeffs[1:], self.var)

    __radd__ = __add__

    def __neg__(self):
        return Series._make([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return _reflect(self, other, "__rsub__")
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return _reflect(self, other, "__rmul__")
        if not isinstance(o, Series):
            return Series._make([c * o for c in self.coeffs], self.var)
        n = min(self.order, o.order)
        a, b = self.coeffs, o.coeffs
        out = [mpq(0)] * n
        for i in range(n):
            x = a[i]
            if x == 0:
                continue
            for j in range(n - i):
                y = b[j]
                if y != 0:
                    out[i + j] = out[i + j] + x * y
        return Series._make(out, self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return _reflect(self, other, "__rtruediv__")
        if isinstance(o, Series):
            return self * o.inverse()
        return Series._make([c / o for c in self.coeffs], self.var)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def inverse(self) -> Series:
        if not self.coeffs or self.coeffs[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        n = self.order
        c0 = self.coeffs[0]
        inv0 = 1 / c0
        out = [inv0]
        for k in range(1, n):
            acc = mpq(0)
            for j in range(1, k + 1):
                s = self.coeffs[j]
                if s != 0:
                    acc = acc + s * out[k - j]
            out.append(-acc * inv0)
        return Series._make(out, self.var)

    def __pow__(self, e):
        if isinstance(e, Integral):
            if e < 0:
                return self.inverse() ** (-e)
            result = Series.one(self.order, self.var)
            base = self
            while e:
                if e & 1:
                    result = result * base
                e >>= 1
                if e:
                    base = base * base
            return result
        return series_pow_rational(self, e)

    def shift(self, k: int) -> Series:
        """Multiply by ``var**k``; the known order grows by ``k``."""
        return Series._make([mpq(0)] * k + list(self.coeffs), self.var)

    def substitute_monomial(self, c, v: int) -> Series:
        """``f(c * var**v)`` for ``v >= 1``."""
        if v < 1:
            raise ValueError("monomial substitution needs a positive exponent")
        n = self.order * v
        out = [mpq(0)] * n
        cp = mpq(1)
        for j, a in enumerate(self.coeffs):
            out[j * v] = a * cp
            cp = cp * c
        return Series._make(out, self.var)

    def compose(self, inner: Series) -> Series:
        return series_compose(self, inner)

    def map_coeffs(self, fn) -> Series:
        return Series._make([fn(c) for c in self.coeffs], self.var)

    def to_poly(self) -> Poly:
        return Poly(self.coeffs, self.var)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not isinstance(o, Series):
            o = Series([o], self.order, self.var)
        return self.first_mismatch(o) is None

    __hash__ = None

    def first_mismatch(self, other: Series):
        """Smallest index below the common order where coefficients differ."""
        n = min(self.order, other.order)
        for i in range(n):
            if self.coeffs[i] != other.coeffs[i]:
                return i
        return None

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:6])
        return f"Series([{shown}{', ...' if self.order > 6 else ''}], order={self.order}, var={self.var!r})"


def series_compose(outer: Series, inner: Series) -> Series:
    """``outer(inner(x))`` for ``inner`` without constant term."""
    if inner.coeffs and inner.coeffs[0] != 0:
        raise ValueError("inner series must have zero constant term")
    v = inner.valuation()
    if v >= inner.order:
        return Series([outer.coeffs[0]], inner.order, inner.var)
    n = min(inner.order, outer.order * v)
    inner = inner.truncate(n)
    nz = [(i, c) for i, c in enumerate(inner.coeffs) if c != 0]
    if len(nz) == 1:
        i, c = nz[0]
        out = outer.substitute_monomial(c, i).truncate(n)
        out.var = inner.var
        return out
    terms = -(-n // v)
    acc = Series([outer.coeffs[terms - 1]], n, inner.var)
    for j in range(terms - 2, -1, -1):
        acc = acc * inner + outer.coeffs[j]
    return acc


def series_pow_rational(s: Series, e) -> Series:
    """``s**e`` for a unit series ``s = 1 + ...`` and exponent ``e``.

    ``e`` may be a rational or a parameter polynomial. Uses the recurrence
    ``n f_n = sum_{j=1..n} ((e+1) j - n) s_j f_{n-j}`` from ``f' s = e s' f``.
    """
    if not s.coeffs or s.coeffs[0] != 1:
        raise ValueError("rational powers need a series with constant term 1")
    e = _scalar(e)
    n = s.order
    f = [mpq(1)]
    e1 = e + 1
    for k in range(1, n):
        acc = mpq(0)
        for j in range(1, k + 1):
            sj = s.coeffs[j]
            if sj != 0:
                acc = acc + (e1 * j - k) * (sj * f[k - j])
        f.append(acc / k)
    return Series._make(f, s.var)
