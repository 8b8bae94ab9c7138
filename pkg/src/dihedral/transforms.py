"""Degree-n pull-back polynomials, the Tchebyshev connection and Heun
parameter maps."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from gmpy2 import mpq

from .algebra import Poly, RatFunc, Q, poly_to_json, substitute_ratio
from .hyper import pfq_terminating

__all__ = [
    "ThetaPair", "HeunParams", "theta_pair", "pullback_phi", "tchebyshev_pair",
    "heun_parameters", "theta_hypergeometric", "theta_tchebyshev_sides",
]


@dataclass(frozen=True)
class ThetaPair:
    """Even and odd parts of ``(1 + sqrt(x))**n``."""

    n: int
    theta1: Poly
    theta2: Poly

    def to_json(self) -> dict:
        return {"n": self.n, "theta1": poly_to_json(self.theta1), "theta2": poly_to_json(self.theta2)}


@dataclass(frozen=True)
class HeunParams:
    alpha: object
    beta: object
    gamma: object
    delta: object
    t: object
    q: object

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma, self.delta, self.t, self.q)

    @property
    def epsilon(self):
        # Fuchs relation for the exponent at infinity.
        return self.alpha + self.beta - self.gamma - self.delta + 1


def theta_pair(n: int) -> ThetaPair:
    if n < 1:
        raise ValueError("theta polynomials need n >= 1")
    t1 = Poly([comb(n, 2 * k) for k in range(n // 2 + 1)])
    t2 = Poly([comb(n, 2 * k + 1) for k in range((n - 1) // 2 + 1)])
    return ThetaPair(n, t1, t2)


def pullback_phi(n: int) -> RatFunc:
    """``x theta2(x)**2 / theta1(x)**2`` in lowest terms."""
    tp = theta_pair(n)
    x = Poly.gen()
    return RatFunc(x * tp.theta2 ** 2, tp.theta1 ** 2)


def tchebyshev_pair(n: int) -> tuple[Poly, Poly]:
    """``(T_n, U_{n-1})`` from the three-term recurrences."""
    if n < 1:
        raise ValueError("Tchebyshev pair needs n >= 1")
    x = Poly.gen()
    t_prev, t_cur = Poly.const(1), x
    u_prev, u_cur = Poly.const(1), 2 * x
    for _ in range(n - 1):
        t_prev, t_cur = t_cur, 2 * x * t_cur - t_prev
        u_prev, u_cur = u_cur, 2 * x * u_cur - u_prev
    return t_cur, u_prev


def theta_hypergeometric(n: int) -> tuple[Poly, Poly]:
    """The theta pair rebuilt from terminating 2F1 sums."""
    x = Poly.gen()
    t1 = pfq_terminating([Q(-n, 2), Q(1 - n, 2)], [Q(1, 2)], x)
    t2 = n * pfq_terminating([Q(1 - n, 2), Q(2 - n, 2)], [Q(3, 2)], x)
    return Poly.const(t1) if not isinstance(t1, Poly) else t1, Poly.const(t2) if not isinstance(t2, Poly) else t2


def theta_tchebyshev_sides(n: int) -> tuple[Poly, Poly]:
    """``x**n theta1((x**2-1)/x**2)`` and ``x**(n-1) theta2((x**2-1)/x**2)``.

    Both are computed by clearing ``x**2`` denominators, so the results are
    polynomials whenever the degree bookkeeping is right.
    """
    tp = theta_pair(n)
    x = Poly.gen()
    num, den = x * x - 1, x * x
    d1, d2 = tp.theta1.degree, tp.theta2.degree
    s1 = substitute_ratio(tp.theta1, num, den, d1)  # = x**(2 d1) theta1(...)
    s2 = substitute_ratio(tp.theta2, num, den, d2)
    return _shift_exact(s1, n - 2 * d1), _shift_exact(s2, n - 1 - 2 * d2)


def _shift_exact(p: Poly, k: int) -> Poly:
    if k >= 0:
        return p.shift(k)
    return p / Poly.monomial(1, -k)


def heun_parameters(source: str, *args) -> HeunParams:
    """Heun parameter tuples ``(alpha, beta, gamma, delta, t, q)``.

    ``square-map`` takes ``(A, B, C)``; ``dihedral-pullback`` takes ``(a, k, l)``.
    """
    if source == "square-map":
        A, B, C = args
        return HeunParams(2 * A, 2 * B, C, C, Q(1, 2), 2 * A * B)
    if source == "dihedral-pullback":
        a, k, l = args
        return HeunParams(a, -k - l + mpq(0), 1 + a + k + l, mpq(-2 * k), mpq(-1), (k - l) * a)
    raise ValueError(f"unknown Heun parameter source {source!r}")
