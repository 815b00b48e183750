"""Zariski decompositions along the rays H - tF and L - tD, and exact volumes.

Volumes are top self-intersections of Zariski positive parts.  On each chamber
the volume is a polynomial in t, so integrals are computed by exact
antidifferentiation of those polynomials.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import Poly, RationalLike, to_rational
from .blowup import BlowupClass, _power, eval_power
from .bundle import BundleData
from .divisors import DivisorClass, _top_power, require_ample


class Axis(str, enum.Enum):
    F = "F"
    D = "D"


@dataclass(frozen=True)
class ZariskiDecomposition:
    """H_E - tF = positive + alpha * D, with positive = rho*H - t rho*F - alpha D."""

    t: Fraction
    alpha: Fraction
    positive: BlowupClass


@dataclass(frozen=True)
class ChamberPolynomial:
    lo: Fraction
    hi: Fraction
    poly: Poly

    @property
    def chamber(self) -> tuple[Fraction, Fraction]:
        return (self.lo, self.hi)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self.poly.coeffs

    def __call__(self, t):
        return self.poly(t)

    def integral(self) -> Fraction:
        return self.poly.integrate(self.lo, self.hi)


def zariski_decompose(t: RationalLike, b: BundleData) -> ZariskiDecomposition:
    t = to_rational(t)
    if t > b.mu_max:
        raise ValueError(f"H - {t}F is not pseudo-effective (t > mu_max = {b.mu_max})")
    if t <= b.mu_min:
        alpha = Fraction(0)
    else:
        alpha = (t - b.mu_min) / (b.mu_max - b.mu_min)
    return ZariskiDecomposition(t, alpha, BlowupClass(Fraction(1), -t, -alpha))


def volume_H_minus_tF(t: RationalLike, b: BundleData) -> Fraction:
    """Vol(H_E - tF) on X.

    n(mu - t) on the nef chamber, the positive part's top power between
    mu_min and mu_max, zero beyond mu_max.
    """
    t = to_rational(t)
    if t <= b.mu_min:
        return b.rank * (b.mu - t)
    if t >= b.mu_max:
        return Fraction(0)
    return eval_power(zariski_decompose(t, b).positive, b)


def tau(L: DivisorClass, axis: Axis, b: BundleData) -> Fraction:
    """Pseudo-effective threshold of L along the fibre or the exceptional divisor."""
    axis = Axis(axis)
    if axis is Axis.F:
        return L.f + L.xi * b.mu_max
    return L.xi


def volume_L_minus_tF(L: DivisorClass, t: RationalLike, b: BundleData) -> Fraction:
    """Vol(L - tF) = a^n Vol(H_E - ((t - b)/a) F)."""
    require_ample(L, b)
    t = to_rational(t)
    a = L.xi
    return a ** b.rank * volume_H_minus_tF((t - L.f) / a, b)


def _require_exceptional(b: BundleData) -> None:
    if not b.has_exceptional_divisor:
        raise ValueError(
            "the D axis needs an exceptional divisor: give an HN step, or declare "
            "subbundle_rank for a strictly semistable bundle"
        )


def volume_L_minus_tD(L: DivisorClass, t: RationalLike, b: BundleData) -> Fraction:
    """Vol(rho*L - tD); rho*L - tD stays nef up to t = a, where it stops being big."""
    require_ample(L, b)
    _require_exceptional(b)
    t = to_rational(t)
    if t < 0:
        raise ValueError("t must be non-negative")
    if t >= L.xi:
        return Fraction(0)
    return eval_power(BlowupClass(L.xi, L.f, -t), b)


def chamber_profile(L: DivisorClass, axis: Axis, b: BundleData) -> list[ChamberPolynomial]:
    """Piecewise-polynomial form of t -> Vol(L - t*axis) on [0, tau]."""
    require_ample(L, b)
    axis = Axis(axis)
    t = Poly.var()
    a, bb = L.xi, L.f
    if axis is Axis.D:
        _require_exceptional(b)
        return [ChamberPolynomial(Fraction(0), a, _power(Poly.const(a), Poly.const(bb), -t, b))]

    wall = bb + a * b.mu_min
    chambers = [ChamberPolynomial(Fraction(0), wall, _top_power(Poly.const(a), bb - t, b))]
    if b.mu_max > b.mu_min:
        # positive part of L - tF is a * (rho*H - s rho*F - alpha(s) D), s = (t - b)/a
        dd = -(t - wall) / (b.mu_max - b.mu_min)
        chambers.append(
            ChamberPolynomial(wall, tau(L, Axis.F, b), _power(Poly.const(a), bb - t, dd, b))
        )
    return chambers


def evaluate_profile(profile: Sequence[ChamberPolynomial], t: RationalLike) -> tuple[Fraction, int]:
    """Value of a chamber profile at t and the index of the chamber used."""
    t = to_rational(t)
    for k, ch in enumerate(profile):
        if ch.lo <= t <= ch.hi:
            return Fraction(ch(t)), k
    if t > profile[-1].hi:
        return Fraction(0), len(profile) - 1
    raise ValueError(f"t = {t} lies below the profile (starts at {profile[0].lo})")


def integral_volume(L: DivisorClass, axis: Axis, b: BundleData) -> Fraction:
    """Exact integral of Vol(L - t*axis) over [0, tau]."""
    return sum((ch.integral() for ch in chamber_profile(L, axis, b)), Fraction(0))
