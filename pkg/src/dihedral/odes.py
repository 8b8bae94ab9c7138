"""Differential relations satisfied by the Klein covering polynomials.

Each relation is cleared of denominators by hand and evaluated on exact
polynomials, so a relation holds iff its residual is the zero polynomial.
The P, Q, R relations live in the coordinate where x = 1 and x = infinity
are interchanged (x -> x/(x-1)).
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Poly, Q, RatFunc, moebius_involution, q_str
from .klein import KleinCovering, _theta_degrees, klein_covering

__all__ = [
    "PqrTriple", "to_pqr", "RELATIONS", "PRINTED_VARIANTS", "ode_residual", "ode_check",
    "pullback_coefficients", "operator_consistency",
]

X = Poly.gen("x")


@dataclass(frozen=True)
class PqrTriple:
    """Monic images of Theta2, Theta1, Psi; ``P = scale_p * image`` etc."""

    P: Poly
    Q: Poly
    R: Poly
    parity: str
    scale_p: object
    scale_q: object
    scale_r: object
    k: int
    l: int
    m: int
    n: int

    @property
    def degree(self) -> int:
        return (self.k + self.l) * self.m + self.n


def to_pqr(cov: KleinCovering) -> PqrTriple:
    k, l, m, n = cov.k, cov.l, cov.m, cov.n
    alpha, beta = _theta_degrees(k, l, m, n)
    d = (k + l) * m + n
    imgs = []
    for poly, cap in ((cov.theta2, beta), (cov.theta1, alpha), (cov.psi, k + l)):
        if poly.degree > cap:
            raise ArithmeticError(f"degree {poly.degree} exceeds cap {cap}")
        imgs.append(moebius_involution(poly, cap))
    (p, sp), (qq, sq), (r, sr) = ((im.monic(), im.lc) for im in imgs)
    if r.degree != k + l:
        raise ArithmeticError(f"R has degree {r.degree}, expected {k + l}")
    return PqrTriple(p, qq, r, "odd-degree" if d % 2 else "even-degree",
                     Q(1) / sp, Q(1) / sq, Q(1) / sr, k, l, m, n)


# ---------------------------------------------------------------------------
# Cleared residuals
# ---------------------------------------------------------------------------

def _derivs(p: Poly, count: int):
    out = [p]
    for _ in range(count):
        out.append(out[-1].diff())
    return out


def _difftpsii(cov, _):
    k, l, m, n = cov.k, cov.l, cov.m, cov.n
    r2 = Q(n * n, m * m)
    s, s1, s2 = _derivs(cov.psi, 2)
    psi1 = cov.psi(1)
    x = X
    body = (x * (x - 1) * (s1 * s1 - 2 * s2 * s) + ((2 * k - 3) * x - 2 * k + 1) * s1 * s
            - (k + l) * (k - l - 1) * s * s)
    # times (x - 1)
    return (x - 1) * body + r2 * s * s - r2 * psi1 ** 2 * x ** (2 * k)


def _diffpsi(cov, _, printed=False):
    """Third-order relation for Psi, times x^2 (x-1)^2.

    The default form is the image of the R relation under x -> x/(x-1).
    ``printed`` uses +3/(x-1) in the Psi'' coefficient and twice the Psi
    coefficient; that form only holds when Psi is constant.
    """
    k, l, m, n = cov.k, cov.l, cov.m, cov.n
    r2 = Q(n * n, m * m)
    s, s1, s2, s3 = _derivs(cov.psi, 3)
    x = X
    kl = (k + l) * (k - l - 1)
    sign, half = (1, 1) if printed else (-1, Q(1, 2))
    return (x ** 2 * (x - 1) ** 2 * s3
            - 3 * x * (x - 1) * ((k - Q(1, 2)) * (x - 1) + sign * x) * s2
            + (k * (2 * k - 1) * (x - 1) ** 2 + (1 - r2) * x ** 2
               + (k * k - l * l - 5 * k - l + 2 + r2) * x * (x - 1)) * s1
            - half * (kl * (2 * k - 1) * x - 2 * k * (kl + r2)) * s)


def _thetaa(cov, _, printed=False):
    """Fuchsian relation for Theta2, times 4 x (x-1) Psi^2 Theta2.

    The default form is the image of either P relation under x -> x/(x-1)
    (both parities give the same result); it has +2(m+n)/(x-1) in the
    Psi'/Psi coefficient where ``printed`` has -2(m+n)/(x-1).
    """
    k, l, m, n = cov.k, cov.l, cov.m, cov.n
    s, s1, s2 = _derivs(cov.psi, 2)
    t, t1, t2 = _derivs(cov.theta2, 2)
    x = X
    sign = 1 if printed else -1
    return (4 * x * (x - 1) * s * s * t2
            + 4 * ((k + Q(3, 2)) * (x - 1) * s - (n - 1) * x * s - (m - 1) * x * (x - 1) * s1) * s * t1
            + 2 * m * (m - 1) * x * (x - 1) * s * s2 * t
            - (m - 1) * ((m * (2 * k - 1) + 4 * k + 2) * (x - 1) + sign * 2 * (m + n) * x) * s1 * s * t
            + (m * m * (k + l) * (k - l - 1) + (n - 2) * (n - 2 * k - 1)) * s * s * t)


def _difftrr_r(R: Poly, k, l, m, n) -> Poly:
    r2 = Q(n * n, m * m)
    r, r1, r2d = _derivs(R, 2)
    x = X
    return (((k + l) ** 2 - r2) * r * r + r2 * x ** (2 * k) * (x - 1) ** (2 * l)
            - (2 * (k + l - 1) * x - 2 * k + 1) * r1 * r
            - x * (x - 1) * (r1 * r1 - 2 * r2d * r))


def _rsqeq_r(R: Poly, k, l, m, n) -> Poly:
    r2 = Q(n * n, m * m)
    r, r1, rr2, r3 = _derivs(R, 3)
    x = X
    # times x^2 (x-1)^2
    return (x ** 2 * (x - 1) ** 2 * r3
            - 3 * x * (x - 1) * ((k - Q(1, 2)) * (x - 1) + (l - Q(1, 2)) * x) * rr2
            + (k * (2 * k - 1) * (x - 1) ** 2 + l * (2 * l - 1) * x ** 2
               + ((k + l) ** 2 + (2 * k - 1) * (2 * l - 1) - r2) * x * (x - 1)) * r1
            - ((k + l) ** 2 - r2) * ((k + l) * x - k) * r)


def _difftrr(cov, pqr):
    return _difftrr_r(pqr.R, cov.k, cov.l, cov.m, cov.n)


def _rsqeq(cov, pqr):
    return _rsqeq_r(pqr.R, cov.k, cov.l, cov.m, cov.n)


def _logdiffp(cov, pqr, odd: bool):
    k, l, m, n = cov.k, cov.l, cov.m, cov.n
    p, p1, p2 = _derivs(pqr.P, 2)
    r, r1, r2 = _derivs(pqr.R, 2)
    x = X
    rhs = x * (x - 1) * (4 * p2 * r * r - 4 * (m - 1) * p1 * r1 * r - 2 * m * p * r2 * r + m * m * p * r1 * r1)
    if odd:
        rhs = (rhs + (2 * (k - l + 2) * x - 2 * k - 3) * (2 * p1 * r - m * p * r1) * r
               + (2 * k + 1) * (2 * (x - 1) * r1 - (2 * l - 1) * r) * p * r)
    else:
        rhs = (rhs + (2 * (k + l + 3) * x - 2 * k - 3) * (2 * p1 * r - m * p * r1) * r
               - 2 * (2 * k + 1) * p * r1 * r + 4 * (k + l + 1) * (x * r1 + r) * p * r)
    return n * n * x ** (2 * k) * (x - 1) ** (2 * l) * p - rhs


def _ppdiffeq(cov, pqr, odd: bool):
    k, l, m, n = cov.k, cov.l, cov.m, cov.n
    p, p1, p2 = _derivs(pqr.P, 2)
    r, r1, r2 = _derivs(pqr.R, 2)
    x = X
    if odd:
        c1 = (k + Q(3, 2)) * (x - 1) - (l - Q(1, 2)) * x
        c2 = (m * (2 * k - 1) + 4 * k + 2) * (x - 1) + m * (2 * l - 1) * x
        c0 = m * m * (k + l) ** 2 - n * n - (2 * k + 1) * (2 * l - 1)
    else:
        c1 = (k + Q(3, 2)) * (x - 1) + (l + Q(3, 2)) * x
        c2 = (m * (2 * k - 1) + 4 * k + 2) * (x - 1) + (m * (2 * l - 1) + 4 * l + 2) * x
        c0 = m * m * (k + l) ** 2 - n * n + 4 * (k + l + 1)
    # times 4 x (x-1) R^2 P
    return (4 * x * (x - 1) * r * r * p2
            + 4 * (c1 * r - (m - 1) * x * (x - 1) * r1) * r * p1
            + 2 * m * (m - 1) * x * (x - 1) * r * r2 * p
            - (m - 1) * c2 * r1 * r * p
            + c0 * r * r * p)


def _pulled_back_phi(cov: KleinCovering, pqr: PqrTriple) -> RatFunc:
    """``phi(X) / (phi(X) - 1)`` with ``X = x/(x-1)``.

    Swapping x = 1 with x = infinity and z = 1 with z = infinity together
    gives ``c x^(2k+1) (x-1)^e P^2 / R^m`` with e = 0 (odd degree) or 2l+1.
    """
    k, l, m, n = cov.k, cov.l, cov.m, cov.n
    _, beta = _theta_degrees(k, l, m, n)
    p_img = moebius_involution(cov.theta2, beta)
    r_img = moebius_involution(cov.psi, k + l)
    e = (k + l) * m + n - 2 * k - 1 - 2 * beta
    c = -(-1) ** n / Q(cov.C)
    return RatFunc(c * X ** (2 * k + 1) * (X - 1) ** e * p_img ** 2, r_img ** m)


def pullback_coefficients(cov: KleinCovering, pqr: PqrTriple | None = None):
    """``(A, B)`` with ``Y'' = A Y' + B Y`` for ``y(phi(x)) = Y / sqrt(R)``.

    The source equation is the one for 2F1(1/(2m), -1/(2m); 1/2; z).
    """
    pqr = pqr or to_pqr(cov)
    m = cov.m
    phi = _pulled_back_phi(cov, pqr)
    d1 = phi.diff()
    d2 = d1.diff()
    one = RatFunc(Poly.const(1), Poly.const(1))
    p_phi = (one * Q(1, 2) - phi) / (phi * (one - phi))
    q_phi = one * Q(1, 4 * m * m) / (phi * (one - phi))
    P1 = p_phi * d1 - d2 / d1
    P0 = q_phi * d1 * d1
    R = RatFunc(pqr.R, Poly.const(1))
    lr = R.diff() / R                                   # R'/R
    lr2 = R.diff().diff() / R                           # R''/R
    A = -P1 + lr
    B = -(P0 - P1 * lr * Q(1, 2) - lr2 * Q(1, 2) + lr * lr * Q(3, 4))
    return A, B


def _pbacked(cov, pqr):
    """Zero polynomial when the pulled-back equation has the stated form.

    Returns the sum of the cleared numerators of three differences: the
    dY/dx coefficient, the printed Y coefficient, and the Y coefficient
    against the target hypergeometric equation.
    """
    k, l, m, n = cov.k, cov.l, cov.m, cov.n
    A, B = pullback_coefficients(cov, pqr)
    one = RatFunc(Poly.const(1), Poly.const(1))
    x = RatFunc(X, Poly.const(1))
    a_want = (one * (k - Q(1, 2))) / x + (one * (l - Q(1, 2))) / (x - 1)
    R = RatFunc(pqr.R, Poly.const(1))
    lr = R.diff() / R
    big = RatFunc(Q(n * n, 4 * m * m) * X ** (2 * k) * (X - 1) ** (2 * l), X * (X - 1) * pqr.R ** 2)
    b_printed = R.diff().diff() / R * Q(1, 2) - lr * lr * Q(1, 4) - a_want * lr * Q(1, 2) + big
    b_target = one * (Q(n * n, m * m) - (k + l) ** 2) / (x * (x - 1) * 4)
    out = Poly.const(0)
    for diff in (A - a_want, B - b_printed, B - b_target):
        out = out + (diff.num * diff.num)    # squares: no cancellation between parts
    return out


RELATIONS = {
    "difftpsii": ("any", _difftpsii),
    "diffpsi": ("any", _diffpsi),
    "thetaa": ("any", _thetaa),
    "difftrr": ("any", _difftrr),
    "rsqeq": ("any", _rsqeq),
    "logdiffp-odd": ("odd-degree", lambda c, p: _logdiffp(c, p, True)),
    "logdiffp-even": ("even-degree", lambda c, p: _logdiffp(c, p, False)),
    "ppdiffeq-odd": ("odd-degree", lambda c, p: _ppdiffeq(c, p, True)),
    "ppdiffeq-even": ("even-degree", lambda c, p: _ppdiffeq(c, p, False)),
    "pbacked": ("any", _pbacked),
}


# Relations whose printed coefficients differ from the derived ones.
PRINTED_VARIANTS = ("diffpsi", "thetaa")


def ode_residual(relation: str, cov: KleinCovering, printed: bool = False) -> Poly:
    """Cleared residual of a differential relation; zero when it holds.

    ``printed`` selects the literal printed coefficients for the relations
    in ``PRINTED_VARIANTS``.
    """
    try:
        parity, fn = RELATIONS[relation]
    except KeyError:
        raise KeyError(f"unknown relation {relation!r}; expected one of {sorted(RELATIONS)}") from None
    if not cov.certified:
        raise ValueError("covering is not certified")
    pqr = to_pqr(cov)
    if parity != "any" and parity != pqr.parity:
        raise ValueError(f"relation {relation} needs {parity} coverings; degree {pqr.degree} is {pqr.parity}")
    if printed:
        if relation not in PRINTED_VARIANTS:
            raise ValueError(f"no separate printed form for {relation}")
        res = fn(cov, pqr, printed=True)
    else:
        res = fn(cov, pqr)
    return res if isinstance(res, Poly) else Poly.const(res)


def ode_check(relation: str, k: int, l: int, m: int, n: int, printed: bool = False) -> dict:
    cov = klein_covering(k, l, m, n)
    res = ode_residual(relation, cov, printed)
    return {
        "relation": relation, "k": k, "l": l, "m": m, "n": n, "printed": printed,
        "pass": res.is_zero(),
        "residual": [q_str(c) for c in res.coeffs],
    }


def operator_consistency(cov: KleinCovering, perturb: bool = True) -> bool:
    """``x (x-1) (d/dx - 2k/x - 2l/(x-1))`` of the R relation equals ``2 R`` times
    the cleared third-order relation, as an identity for arbitrary R.

    With ``perturb`` the check runs on R + x^(k+l+1) so it is not vacuous.
    """
    k, l, m, n = cov.k, cov.l, cov.m, cov.n
    R = to_pqr(cov).R
    if perturb:
        R = R + X ** (k + l + 1) + 3
    E = _difftrr_r(R, k, l, m, n)
    x = X
    lhs = x * (x - 1) * E.diff() - (2 * k * (x - 1) + 2 * l * x) * E
    return lhs == 2 * R * _rsqeq_r(R, k, l, m, n)
