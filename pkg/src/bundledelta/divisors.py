"""Numerical classes a*xi + b*f on X = P(E) and their intersection theory.

N^1(X) is spanned by xi = [O(1)] and the fibre class f, with
xi^n = deg E, xi^(n-1) f = 1 and f^2 = 0.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import RationalLike, to_rational
from .bundle import BundleData


class ConePosition(str, enum.Enum):
    AMPLE = "ample"
    NEF_NOT_AMPLE = "nef_not_ample"
    PSEFF_NOT_NEF = "pseff_not_nef"
    NOT_PSEFF = "not_pseff"


class NotAmpleError(ValueError):
    code = "not_ample"


@dataclass(frozen=True)
class DivisorClass:
    xi: Fraction
    f: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "xi", to_rational(self.xi))
        object.__setattr__(self, "f", to_rational(self.f))

    @classmethod
    def of(cls, a: RationalLike, b: RationalLike) -> "DivisorClass":
        return cls(to_rational(a), to_rational(b))

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.xi + other.xi, self.f + other.f)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.xi - other.xi, self.f - other.f)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.xi, -self.f)

    def scale(self, lam: RationalLike) -> "DivisorClass":
        lam = to_rational(lam)
        return DivisorClass(lam * self.xi, lam * self.f)

    def __str__(self) -> str:
        sign = "-" if self.f < 0 else "+"
        return f"{self.xi}*xi {sign} {abs(self.f)}*f"


def cone_position(c: DivisorClass, b: BundleData) -> ConePosition:
    """Place c = a xi + b f relative to the nef cone <f, xi - mu_min f> and the
    pseudo-effective cone <f, xi - mu_max f>.

    Boundaries are closed half-planes; exact rationals make them unambiguous.
    """
    a, bb = c.xi, c.f
    if a > 0 and bb > -a * b.mu_min:
        return ConePosition.AMPLE
    if a >= 0 and bb >= -a * b.mu_min:
        return ConePosition.NEF_NOT_AMPLE
    if a >= 0 and bb >= -a * b.mu_max:
        return ConePosition.PSEFF_NOT_NEF
    return ConePosition.NOT_PSEFF


def is_nef(c: DivisorClass, b: BundleData) -> bool:
    return cone_position(c, b) in (ConePosition.AMPLE, ConePosition.NEF_NOT_AMPLE)


def require_ample(c: DivisorClass, b: BundleData) -> None:
    pos = cone_position(c, b)
    if pos is not ConePosition.AMPLE:
        raise NotAmpleError(f"not_ample: {c} is {pos.value} (need a > 0 and b > -a*mu_min = {-c.xi * b.mu_min})")


def intersect_on_X(i: int, j: int, b: BundleData) -> Fraction:
    """xi^i f^j for i + j = n."""
    n = b.rank
    if i < 0 or j < 0 or i + j != n:
        raise ValueError(f"exponents ({i}, {j}) must be non-negative and sum to n = {n}")
    if j == 0:
        return Fraction(b.degree)
    if j == 1:
        return Fraction(1)
    return Fraction(0)


def mixed_intersection(classes: Sequence[DivisorClass], b: BundleData) -> Fraction:
    """D_1 ... D_n for classes D_k = x_k xi + y_k f.

    Since f^2 = 0 only terms with at most one f survive:
    deg(E) * prod(x_k) + sum_j y_j * prod_{k != j} x_k.
    """
    if len(classes) != b.rank:
        raise ValueError(f"need exactly n = {b.rank} classes, got {len(classes)}")
    xs = [c.xi for c in classes]
    total = Fraction(b.degree)
    for x in xs:
        total *= x
    for j, c in enumerate(classes):
        term = c.f
        for k, x in enumerate(xs):
            if k != j:
                term *= x
        total += term
    return total


def _top_power(a, bb, b: BundleData):
    # (a xi + bb f)^n = a^n d + n a^(n-1) bb; coefficient-generic so polynomial
    # coefficients flow through unchanged.
    n = b.rank
    return a ** (n - 1) * (a * b.degree + n * bb)


def eval_top_power(c: DivisorClass, b: BundleData) -> Fraction:
    """(a xi + b f)^n = n a^(n-1) (a mu + b); the volume when c is nef."""
    return _top_power(c.xi, c.f, b)


def volume(c: DivisorClass, b: BundleData) -> Fraction:
    """Vol(L) for nef L; raises if L is not nef (no Zariski decomposition here)."""
    if not is_nef(c, b):
        raise ValueError(f"{c} is not nef; use the Zariski-decomposition routines")
    return eval_top_power(c, b)


def canonical_class(b: BundleData) -> DivisorClass:
    """[K_X] = -n xi + (2g - 2 + d) f."""
    return DivisorClass(Fraction(-b.rank), Fraction(2 * b.genus - 2 + b.degree))
