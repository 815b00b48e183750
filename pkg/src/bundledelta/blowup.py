"""Intersection numbers on the blowup of P(E) along P(E/E1).

Monomials (rho*H)^a (rho*F)^b D^c with a + b + c = n.  For c > 0 they are
pushed down to P(E/E1) through the normal-bundle Segre classes.  Because the
base is a curve, only the Segre terms of degree 0 and 1 survive, which gives
the closed forms used here.
"""
from __future__ import annotations

import logging
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction

from .arith import RationalLike, binom, multinom, to_rational
from .bundle import BlowupCenter, BundleData

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlowupClass:
    """h * rho^*H_E + phi * rho^*F + dd * D."""

    h: Fraction
    phi: Fraction
    dd: Fraction

    def __post_init__(self) -> None:
        for name in ("h", "phi", "dd"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))

    @classmethod
    def of(cls, h: RationalLike, phi: RationalLike, dd: RationalLike) -> "BlowupClass":
        return cls(to_rational(h), to_rational(phi), to_rational(dd))


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _exceptional_no_fibre(c: int, r: int, n: int, mu_max: Fraction, mu_min: Fraction) -> Fraction:
    # (rho*H)^(n-c) D^c, c >= r:
    #   (-1)^(1+r) C(c-1, r-1) deg(E/E1) + (-1)^r C(c-1, r) deg(E1)
    return (
        _sign(1 + r) * binom(c - 1, r - 1) * (n - r) * mu_min
        + _sign(r) * binom(c - 1, r) * r * mu_max
    )


def _exceptional_one_fibre(c: int, r: int) -> Fraction:
    # (rho*H)^(n-c-1) rho*F D^c, c >= r; the S_1 term drops since
    # p2_*((i*H)^(n-r-2) i*F) = 0.
    return Fraction(_sign(r + 1) * binom(c - 1, r - 1))


def _center(b: BundleData) -> BlowupCenter:
    if not b.has_exceptional_divisor:
        raise ValueError(
            "no blowup for this bundle: HN length 1 and no declared slope-equal subbundle"
        )
    return b.blowup_center()


def triple_power_at(a_exp: int, b_exp: int, c_exp: int, n: int, center: BlowupCenter) -> Fraction:
    """Intersection number with the bundle reduced to (n, r, mu_max, mu_min)."""
    if min(a_exp, b_exp, c_exp) < 0 or a_exp + b_exp + c_exp != n:
        raise ValueError(f"exponents ({a_exp}, {b_exp}, {c_exp}) must be >= 0 and sum to n = {n}")
    r, mu_max, mu_min = center
    if b_exp >= 2:
        return Fraction(0)
    if c_exp == 0:
        if b_exp == 0:
            return r * mu_max + (n - r) * mu_min  # n * mu
        return Fraction(1)
    if c_exp < r:
        log.debug("D^%d with %d < r = %d vanishes", c_exp, c_exp, r)
        return Fraction(0)
    if b_exp == 0:
        return Fraction(_exceptional_no_fibre(c_exp, r, n, mu_max, mu_min))
    return _exceptional_one_fibre(c_exp, r)


def triple_power(a_exp: int, b_exp: int, c_exp: int, b: BundleData) -> Fraction:
    """(rho*H_E)^a_exp (rho*F)^b_exp D^c_exp on the blowup."""
    return triple_power_at(a_exp, b_exp, c_exp, b.rank, _center(b))


def table(b: BundleData) -> dict[tuple[int, int, int], Fraction]:
    """All non-zero triple powers, keyed by exponent triple."""
    n, center = b.rank, _center(b)
    out = {}
    for j in (0, 1):
        for c in range(n - j + 1):
            v = triple_power_at(n - j - c, j, c, n, center)
            if v:
                out[(n - j - c, j, c)] = v
    return out


@lru_cache(maxsize=256)
def _weighted_table(b: BundleData) -> tuple[tuple[int, int, int, Fraction], ...]:
    n = b.rank
    return tuple((i, j, k, multinom(n, (i, j, k)) * v) for (i, j, k), v in table(b).items())


def _power(h, phi, dd, b: BundleData):
    # Coefficients may be Fractions or Poly objects; only ring operations used.
    total = 0
    for i, j, k, w in _weighted_table(b):
        total = total + w * (h ** i) * (phi ** j) * (dd ** k)
    return total


def eval_power(c: BlowupClass, b: BundleData) -> Fraction:
    """Top self-intersection (h rho*H + phi rho*F + dd D)^n by multinomial expansion."""
    return Fraction(_power(c.h, c.phi, c.dd, b))
