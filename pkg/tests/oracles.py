"""Independent oracles used only by the test suite.

chow_blowup_degree
    The blowup of P(E) along P(E/E1) is the projective bundle P(W^*) over
    Y = P(E1), where 0 -> O_Y(1) -> W^* -> E/E1 -> 0.  Its Chow ring is
    presented by generators zeta = rho*H_E, x = pi*H_{E1}, f = fibre with
        f^2 = 0,
        x^r = deg(E1) x^(r-1) f,
        zeta^m - c1(W^*) zeta^(m-1) + c2(W^*) zeta^(m-2) = 0,   m = n - r + 1,
    and D = zeta - x.  The leading monomials are coprime, so lex reduction by
    these three relations is a normal form; the degree is the coefficient of
    zeta^(m-1) x^(r-1) f.  Nothing here shares code with the closed forms.

segre_literal
    Expands the Segre-class push-forward sum term by term over l = 0..c-r,
    using that only S_0 and S_1 survive on a curve.

float_volume_F
    Vol(L - tF) in floats, from the Zariski decomposition re-derived here
    (nef below the wall, then subtract alpha D with alpha linear in t) and the
    ring-generic top-power expansion.  Independent of the chamber polynomials.

simpson_integral
    Composite Simpson quadrature of a pointwise volume function in floats.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

import numpy as np
import sympy as sp
from scipy.integrate import simpson

ZETA, X, FIB = sp.symbols("zeta x f")


def _q(v) -> sp.Rational:
    v = Fraction(v)
    return sp.Rational(v.numerator, v.denominator)


def chow_blowup_degree(a_exp, b_exp, c_exp, n, r, mu_max, mu_min) -> Fraction:
    d1 = r * _q(mu_max)
    d2 = (n - r) * _q(mu_min)
    m = n - r + 1
    c1 = X + d2 * FIB
    c2 = d2 * X * FIB
    rel_zeta = ZETA ** m - c1 * ZETA ** (m - 1) + c2 * ZETA ** (m - 2)
    rel_x = X ** r - d1 * X ** (r - 1) * FIB
    expr = sp.expand(ZETA ** a_exp * FIB ** b_exp * (ZETA - X) ** c_exp)
    _, rem = sp.reduced(expr, [rel_zeta, rel_x, FIB ** 2], ZETA, X, FIB, order="lex")
    top = sp.Poly(rem, ZETA, X, FIB).coeff_monomial(ZETA ** (m - 1) * X ** (r - 1) * FIB)
    top = sp.Rational(top)
    return Fraction(int(top.p), int(top.q))


def chow_projective_bundle_degree(i, j, n, degree) -> Fraction:
    """xi^i f^j on P(E) from xi^n = deg(E) xi^(n-1) f, f^2 = 0."""
    xi = sp.Symbol("xi")
    expr = sp.expand(xi ** i * FIB ** j)
    _, rem = sp.reduced(expr, [xi ** n - degree * xi ** (n - 1) * FIB, FIB ** 2], xi, FIB, order="lex")
    top = sp.Rational(sp.Poly(rem, xi, FIB).coeff_monomial(xi ** (n - 1) * FIB))
    return Fraction(int(top.p), int(top.q))


def _C(n, k):
    return comb(n, k) if 0 <= k <= n else 0


def segre_literal(a_exp, b_exp, c_exp, n, r, mu_max, mu_min) -> Fraction:
    mu_max, mu_min = Fraction(mu_max), Fraction(mu_min)
    if b_exp >= 2:
        return Fraction(0)
    if c_exp == 0:
        return r * mu_max + (n - r) * mu_min if b_exp == 0 else Fraction(1)
    dim_center = n - r  # dim P(E/E1)
    total = Fraction(0)
    for l in range(0, c_exp - r + 1):
        h_power = a_exp + c_exp - r - l
        # S_l(E1^*) on the curve: S_0 = [C], S_1 = deg(E1) * [pt], higher vanish
        if l == 0:
            segre_deg, curve_classes = Fraction(1), 0
        elif l == 1:
            segre_deg, curve_classes = r * mu_max, 1
        else:
            continue
        if h_power + b_exp + l != dim_center:
            continue
        curve_classes += b_exp
        if curve_classes == 0:
            pushed = (n - r) * mu_min  # (i*H)^(n-r) = deg(E/E1)
        elif curve_classes == 1:
            pushed = Fraction(1)  # (i*H)^(n-r-1) . pt
        else:
            pushed = Fraction(0)
        sign = -1 if (1 + r + l) % 2 else 1
        total += sign * _C(c_exp - 1, r - 1 + l) * segre_deg * pushed
    return total


def float_volume_F(L, t: float, b) -> float:
    from bundledelta.blowup import _power

    a, bb = float(L.xi), float(L.f)
    lo, hi, mu = float(b.mu_min), float(b.mu_max), float(b.mu)
    s = (t - bb) / a  # L - tF = a (H - sF)
    if s <= lo:
        return a ** b.rank * b.rank * (mu - s)
    if s >= hi:
        return 0.0
    alpha = (s - lo) / (hi - lo)
    return a ** b.rank * float(_power(1.0, -s, -alpha, b))


def simpson_integral(func, pieces, panels: int = 10_000) -> float:
    """Composite Simpson on each [lo, hi] piece with ``panels`` panels."""
    total = 0.0
    for lo, hi in pieces:
        lo, hi = float(lo), float(hi)
        if hi <= lo:
            continue
        xs = np.linspace(lo, hi, panels + 1)
        ys = np.array([func(x) for x in xs])
        total += simpson(ys, x=xs)
    return total
